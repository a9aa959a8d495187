"""Sparse normal-ordered arithmetic in Q(N) and its tensor powers.

Q(N) is generated by K and f+_k, f-_k (k = 1..N) with
    {f±_i, K} = 0,  {f+_i, f-_j} = delta_ij e1,  {f±_i, f±_j} = 0,  K^4 = 1,
where e0 = (1 + K^2)/2 and e1 = (1 - K^2)/2.

A basis monomial is f+_1^a1 f-_1^b1 ... f+_N^aN f-_N^bN K^n, packed into the
integer key (fmask << 2) | n with bit 2k-2 of fmask for f+_k and bit 2k-1
for f-_k.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import reduce

import numpy as np
from gmpy2 import mpq

from .scalars import ONE, ZERO, CycScalar, I

_HALF = mpq(1, 2)


# ---------------------------------------------------------------------------
# monomials

def mono(fmask: int = 0, kexp: int = 0) -> int:
    return (fmask << 2) | (kexp % 4)


def mono_fmask(key: int) -> int:
    return key >> 2


def mono_kexp(key: int) -> int:
    return key & 3


def fbit(index: int, sign: int) -> int:
    """Bit for f+_index (sign=+1) or f-_index (sign=-1); index is 1-based."""
    return 1 << (2 * (index - 1) + (0 if sign > 0 else 1))


def fdegree(key: int) -> int:
    return bin(key >> 2).count("1")


def all_monomials(n: int) -> list[int]:
    return [mono(f, k) for f in range(1 << (2 * n)) for k in range(4)]


def mono_index(key: int) -> int:
    """Position of a monomial in the ordered basis all_monomials(n)."""
    return key


def mono_str(key: int) -> str:
    fm, k = key >> 2, key & 3
    parts = []
    j = 0
    while fm >> j:
        if fm >> j & 1:
            parts.append(f"f{'+' if j % 2 == 0 else '-'}{j // 2 + 1}")
        j += 1
    if k:
        parts.append("K" if k == 1 else f"K^{k}")
    return " ".join(parts) if parts else "1"


# per-index products of the words 0 = 1, 1 = f+, 2 = f-, 3 = f+f-
# entries are (word, number of K^2 factors, coefficient)
_WORD_PROD = {
    (1, 1): (),
    (2, 2): (),
    (1, 2): ((3, 0, mpq(1)),),
    (2, 1): ((0, 0, _HALF), (0, 1, -_HALF), (3, 0, mpq(-1))),
    (1, 3): (),
    (2, 3): ((2, 0, _HALF), (2, 1, -_HALF)),
    (3, 1): ((1, 0, _HALF), (1, 1, -_HALF)),
    (3, 2): (),
    (3, 3): ((3, 0, _HALF), (3, 1, -_HALF)),
}
_WORD_PARITY = (0, 1, 1, 0)

_MUL_CACHE: dict[tuple[int, int], tuple] = {}


def mono_mul(a: int, b: int) -> tuple[tuple[int, mpq], ...]:
    """Product of two basis monomials as a tuple of (key, rational coefficient)."""
    hit = _MUL_CACHE.get((a, b))
    if hit is not None:
        return hit
    fa, ka = a >> 2, a & 3
    fb, kb = b >> 2, b & 3
    sign = -1 if (ka & 1) and (bin(fb).count("1") & 1) else 1
    # partial results: (fmask, k2count, coeff)
    partial = [(0, 0, mpq(sign))]
    b_before = 0  # parity of b's f-count at indices already passed
    j = 0
    while (fa | fb) >> (2 * j):
        wa = (fa >> (2 * j)) & 3
        wb = (fb >> (2 * j)) & 3
        # B_j moves left past A_k for all k > j; equivalently A_k passes B_j for j < k
        if _WORD_PARITY[wa] and b_before:
            partial = [(m, t, -c) for m, t, c in partial]
        b_before ^= _WORD_PARITY[wb]
        if wa == 0 or wb == 0:
            w = wa | wb
            if w:
                partial = [(m | (w << (2 * j)), t, c) for m, t, c in partial]
        else:
            prods = _WORD_PROD[(wa, wb)]
            if not prods:
                partial = []
                break
            partial = [
                (m | (w << (2 * j)), t + t2, c * c2)
                for m, t, c in partial
                for w, t2, c2 in prods
            ]
        j += 1
    acc: dict[int, mpq] = {}
    for m, t, c in partial:
        key = (m << 2) | ((ka + kb + 2 * t) & 3)
        acc[key] = acc.get(key, 0) + c
    out = tuple((k, c) for k, c in acc.items() if c)
    _MUL_CACHE[(a, b)] = out
    return out


# ---------------------------------------------------------------------------
# elements

def _as_coeff(x) -> CycScalar:
    return x if isinstance(x, CycScalar) else CycScalar.coerce(x)


class AlgElement:
    """Sparse linear combination of basis monomials of Q(N)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[int, CycScalar] = {}
        if terms:
            for k, c in terms.items():
                c = _as_coeff(c)
                if c:
                    self.terms[k] = c

    @classmethod
    def _raw(cls, n, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    # constructors
    @classmethod
    def scalar(cls, n: int, c=1) -> "AlgElement":
        return cls(n, {0: c})

    @classmethod
    def basis(cls, n: int, key: int, c=1) -> "AlgElement":
        return cls(n, {key: c})

    def _check(self, other):
        if not isinstance(other, AlgElement):
            raise TypeError(f"expected AlgElement, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, AlgElement):
            other = AlgElement.scalar(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return AlgElement._raw(self.n, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return AlgElement._raw(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgElement):
            other = AlgElement.scalar(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "AlgElement":
        c = _as_coeff(c)
        if not c:
            return AlgElement._raw(self.n, {})
        return AlgElement._raw(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgElement):
            if isinstance(other, TensorElement):
                return NotImplemented
            return self.scale(other)
        self._check(other)
        acc: dict[int, CycScalar] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                prods = mono_mul(ka, kb)
                if not prods:
                    continue
                c = ca * cb
                for k, r in prods:
                    v = c if r == 1 else c.mul_rational(r)
                    if k in acc:
                        acc[k] = acc[k] + v
                    else:
                        acc[k] = v
        return AlgElement._raw(self.n, {k: v for k, v in acc.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers need an explicit inverse")
        out = AlgElement.scalar(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, CycScalar)):
            return self == AlgElement.scalar(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, key: int) -> CycScalar:
        return self.terms.get(key, ZERO)

    def commutator(self, other: "AlgElement") -> "AlgElement":
        return self * other - other * self

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self) -> list[dict]:
        return [{"monomial": mono_str(k), "coeff": c.to_json()} for k, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{mono_str(k)}" for k, c in self.sorted_terms())


def elem_arith(a: AlgElement, b, kind: str) -> AlgElement:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "scale":
        return a.scale(b)
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


class Gens:
    """Named generators and idempotents of Q(N)."""

    def __init__(self, n: int):
        self.n = n
        self.one = AlgElement.scalar(n)
        self.K = AlgElement.basis(n, mono(0, 1))
        self.K2 = AlgElement.basis(n, mono(0, 2))
        self.e0 = AlgElement(n, {0: _HALF, mono(0, 2): _HALF})
        self.e1 = AlgElement(n, {0: _HALF, mono(0, 2): -_HALF})
        self.omega_plus = (self.e0 + self.e1.scale(I)) * self.K
        self.omega_minus = (self.e0 - self.e1.scale(I)) * self.K

    def Kp(self, e: int) -> AlgElement:
        return AlgElement.basis(self.n, mono(0, e % 4))

    def fp(self, i: int) -> AlgElement:
        return AlgElement.basis(self.n, mono(fbit(i, +1)))

    def fm(self, i: int) -> AlgElement:
        return AlgElement.basis(self.n, mono(fbit(i, -1)))

    def f(self, i: int, sign: int) -> AlgElement:
        return self.fp(i) if sign > 0 else self.fm(i)

    def generators(self) -> list[tuple[str, AlgElement]]:
        out = [("K", self.K)]
        for i in range(1, self.n + 1):
            out.append((f"f+{i}", self.fp(i)))
            out.append((f"f-{i}", self.fm(i)))
        return out

    def top(self) -> AlgElement:
        """f+_1 f-_1 ... f+_N f-_N."""
        return AlgElement.basis(self.n, mono((1 << (2 * self.n)) - 1))

    def relations(self) -> list[tuple[str, AlgElement]]:
        """Defining relations written as elements that must vanish."""
        out = [("K^4 - 1", self.K ** 4 - self.one)]
        gens = [(name, x) for name, x in self.generators() if name != "K"]
        for name, x in gens:
            out.append((f"{{{name}, K}}", x * self.K + self.K * x))
        for (na, a), (nb, b) in itertools.combinations_with_replacement(gens, 2):
            ia, sa = int(na[2:]), na[1]
            ib, sb = int(nb[2:]), nb[1]
            target = self.e1 if (ia == ib and sa != sb) else AlgElement(self.n)
            out.append((f"{{{na}, {nb}}}", a * b + b * a - target))
        return out


# ---------------------------------------------------------------------------
# tensor powers

class TensorElement:
    """Sparse element of Q^{(x)k}; legs multiply independently, no parity signs."""

    __slots__ = ("n", "k", "terms")

    def __init__(self, n: int, k: int, terms=None):
        self.n = n
        self.k = k
        self.terms: dict[tuple, CycScalar] = {}
        if terms:
            for key, c in terms.items():
                if len(key) != k:
                    raise ValueError("tensor degree mismatch")
                c = _as_coeff(c)
                if c:
                    self.terms[tuple(key)] = c

    @classmethod
    def _raw(cls, n, k, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.k = k
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, n: int, k: int) -> "TensorElement":
        return cls._raw(n, k, {(0,) * k: ONE})

    @classmethod
    def tensor(cls, *factors: AlgElement) -> "TensorElement":
        n = factors[0].n
        terms = {(): ONE}
        for a in factors:
            nxt = {}
            for key, c in terms.items():
                for m, v in a.terms.items():
                    nxt[key + (m,)] = c * v
            terms = nxt
        return cls._raw(n, len(factors), {k: v for k, v in terms.items() if v})

    def _check(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError(f"expected TensorElement, got {type(other).__name__}")
        if other.k != self.k:
            raise ValueError(f"tensor degree mismatch: {self.k} vs {other.k}")
        if other.n != self.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return TensorElement._raw(self.n, self.k, out)

    def __neg__(self):
        return TensorElement._raw(self.n, self.k, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = _as_coeff(c)
        if not c:
            return TensorElement._raw(self.n, self.k, {})
        return TensorElement._raw(self.n, self.k, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        acc: dict[tuple, CycScalar] = {}
        k = self.k
        for ta, ca in self.terms.items():
            for tb, cb in other.terms.items():
                slots = []
                single = True
                dead = False
                for s in range(k):
                    p = mono_mul(ta[s], tb[s])
                    if not p:
                        dead = True
                        break
                    if len(p) != 1:
                        single = False
                    slots.append(p)
                if dead:
                    continue
                c = ca * cb
                if single:
                    r = 1
                    key = []
                    for p in slots:
                        key.append(p[0][0])
                        r = r * p[0][1]
                    key = tuple(key)
                    v = c if r == 1 else c.mul_rational(r)
                    acc[key] = acc[key] + v if key in acc else v
                else:
                    for combo in itertools.product(*slots):
                        r = 1
                        for _, x in combo:
                            r = r * x
                        key = tuple(m for m, _ in combo)
                        v = c if r == 1 else c.mul_rational(r)
                        acc[key] = acc[key] + v if key in acc else v
        return TensorElement._raw(self.n, k, {key: v for key, v in acc.items() if v})

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.k == other.k and self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def place(self, targets, k: int | None = None) -> "TensorElement":
        """Leg i of self goes to slot targets[i] of a degree-k tensor; other slots get 1."""
        k = self.k if k is None else k
        if len(targets) != self.k or len(set(targets)) != self.k:
            raise ValueError("invalid leg placement")
        out = {}
        for key, c in self.terms.items():
            new = [0] * k
            for i, t in enumerate(targets):
                new[t] = key[i]
            out[tuple(new)] = c
        return TensorElement._raw(self.n, k, out)

    def permute(self, perm) -> "TensorElement":
        return self.place(perm, self.k)

    def apply_leg(self, slot: int, fn, width: int) -> "TensorElement":
        """Replace leg `slot` by `width` legs via fn(monomial) -> {tuple: coeff}.

        width 0 applies a linear functional on that leg (fn returns {(): c})."""
        acc: dict[tuple, CycScalar] = {}
        for key, c in self.terms.items():
            pre, post = key[:slot], key[slot + 1:]
            for sub, v in fn(key[slot]).items():
                nk = pre + sub + post
                val = c * v
                acc[nk] = acc[nk] + val if nk in acc else val
        return TensorElement._raw(
            self.n, self.k - 1 + width, {k: v for k, v in acc.items() if v}
        )

    def legs(self):
        """Iterate (coefficient, [AlgElement per leg]) over the terms."""
        for key, c in self.terms.items():
            yield c, [AlgElement._raw(self.n, {m: ONE}) for m in key]

    def to_algelement(self) -> AlgElement:
        if self.k != 1:
            raise ValueError("only degree-1 tensors convert to algebra elements")
        return AlgElement._raw(self.n, {key[0]: c for key, c in self.terms.items()})

    def to_json(self) -> list[dict]:
        return [
            {"legs": [mono_str(m) for m in key], "coeff": c.to_json()}
            for key, c in sorted(self.terms.items())
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*" + " (x) ".join(mono_str(m) for m in key)
            for key, c in sorted(self.terms.items())
        )


def tensor(*factors: AlgElement) -> TensorElement:
    return TensorElement.tensor(*factors)


def embed(a: AlgElement, slot: int, k: int) -> TensorElement:
    return TensorElement._raw(a.n, 1, {(m,): c for m, c in a.terms.items()}).place((slot,), k)


def permute(x: TensorElement, perm) -> TensorElement:
    return x.permute(perm)


def tensor_ops(x: TensorElement, y: TensorElement, kind: str) -> TensorElement:
    if kind == "add":
        return x + y
    if kind == "mul":
        return x * y
    raise ValueError(f"unknown operation {kind!r}")


def product(items, unit):
    return reduce(lambda a, b: a * b, items, unit)


# ---------------------------------------------------------------------------
# independent dense oracle

def _letter_rank(letter):
    # f+_i < f-_i < f+_{i+1} < ... < K
    if letter == "K":
        return (10 ** 9, 0)
    sign, i = letter
    return (i, 0 if sign > 0 else 1)


def _normalize_words(words: dict) -> dict:
    """Rewrite words in the generators into normal order by adjacent swaps."""
    done: dict[tuple, Fraction] = {}
    todo = dict(words)
    while todo:
        word, c = todo.popitem()
        pos = None
        for p in range(len(word) - 1):
            x, y = word[p], word[p + 1]
            if x == y and x != "K":
                pos = ("zero", p)
                break
            if _letter_rank(x) > _letter_rank(y):
                pos = ("swap", p)
                break
        if pos is None:
            kcount = sum(1 for x in word if x == "K") % 4
            fs = tuple(x for x in word if x != "K")
            nw = fs + ("K",) * kcount
            done[nw] = done.get(nw, 0) + c
            continue
        kind, p = pos
        if kind == "zero":
            continue
        x, y = word[p], word[p + 1]
        pre, post = word[:p], word[p + 2:]
        if x == "K" or y == "K":
            # K anticommutes with every f
            nxt = [(pre + (y, x) + post, -c)]
        elif x[1] == y[1] and x[0] < 0 < y[0]:
            # f-_i f+_i = 1/2 - 1/2 K^2 - f+_i f-_i
            nxt = [
                (pre + post, c / 2),
                (pre + ("K", "K") + post, -c / 2),
                (pre + (y, x) + post, -c),
            ]
        else:
            nxt = [(pre + (y, x) + post, -c)]
        for w, v in nxt:
            todo[w] = todo.get(w, 0) + v
    return {w: v for w, v in done.items() if v}


def _word_to_key(word) -> int:
    fm = 0
    k = 0
    for x in word:
        if x == "K":
            k += 1
        else:
            fm |= fbit(x[1], x[0])
    return mono(fm, k)


def _key_to_word(key: int) -> tuple:
    fm, k = key >> 2, key & 3
    word = []
    j = 0
    while fm >> j:
        if fm >> j & 1:
            word.append((+1 if j % 2 == 0 else -1, j // 2 + 1))
        j += 1
    return tuple(word) + ("K",) * k


class RegularRepOracle:
    """Dense left-regular representation built from word rewriting.

    Generator matrices come from the rewriting normalizer; the matrix of a
    basis monomial is the product of its letters' matrices, assembled column
    by column.
    """

    def __init__(self, n: int):
        if n > 3:
            raise ValueError("the dense oracle is limited to N <= 3")
        self.n = n
        self.basis = all_monomials(n)
        self.dim = len(self.basis)
        gens = ["K"] + [(s, i) for i in range(1, n + 1) for s in (+1, -1)]
        self.gen_mats = {}
        for g in gens:
            m = np.full((self.dim, self.dim), Fraction(0), dtype=object)
            for col, key in enumerate(self.basis):
                for w, v in _normalize_words({(g,) + _key_to_word(key): Fraction(1)}).items():
                    m[_word_to_key(w), col] += v
            self.gen_mats[g] = m
        self._gen_cols = {
            g: [[(r, m[r, c]) for r in np.nonzero(m[:, c])[0]] for c in range(self.dim)]
            for g, m in self.gen_mats.items()
        }
        self._mats: dict[int, np.ndarray] = {}

    def _apply_word(self, word, vec: dict) -> dict:
        for letter in reversed(word):
            cols = self._gen_cols[letter]
            out: dict[int, Fraction] = {}
            for c, x in vec.items():
                for r, v in cols[c]:
                    out[r] = out.get(r, 0) + v * x
            vec = {r: x for r, x in out.items() if x}
        return vec

    def matrix(self, key: int) -> np.ndarray:
        """Left multiplication by a basis monomial."""
        if key not in self._mats:
            word = _key_to_word(key)
            m = np.full((self.dim, self.dim), Fraction(0), dtype=object)
            for c in range(self.dim):
                for r, x in self._apply_word(word, {c: Fraction(1)}).items():
                    m[r, c] = x
            self._mats[key] = m
        return self._mats[key]

    def vector(self, a: AlgElement) -> np.ndarray:
        v = np.full(self.dim, ZERO, dtype=object)
        for k, c in a.terms.items():
            v[k] = c
        return v

    def element(self, v) -> AlgElement:
        return AlgElement(self.n, {k: x for k, x in enumerate(v) if x})

    def mul(self, a: AlgElement, b: AlgElement) -> AlgElement:
        """Sum over term pairs of coefficient times a column of a dense matrix."""
        acc: dict[int, CycScalar] = {}
        for ka, ca in a.terms.items():
            m = self.matrix(ka)
            for kb, cb in b.terms.items():
                col = m[:, kb]
                c = ca * cb
                for r in np.nonzero(col)[0]:
                    v = c * col[r]
                    acc[int(r)] = acc[int(r)] + v if int(r) in acc else v
        return AlgElement(self.n, acc)


def regular_rep_oracle(n: int) -> RegularRepOracle:
    return RegularRepOracle(n)


def random_element(n: int, rng: random.Random, nterms: int = 4, cyclotomic: bool = True) -> AlgElement:
    keys = all_monomials(n)
    terms = {}
    for _ in range(nterms):
        k = rng.choice(keys)
        if cyclotomic:
            c = CycScalar(*[Fraction(rng.randint(-4, 4), rng.choice([1, 2, 3])) for _ in range(4)])
        else:
            c = CycScalar(Fraction(rng.randint(-4, 4), rng.choice([1, 2])))
        terms[k] = c
    return AlgElement(n, terms)
