"""Normal-ordered operator algebra for the Pauli-level realization.

Operators are finite sums of monomials

    x1^a1 x2^a2 x3^a3  p1^b1 p2^b2 p3^b3  M

with every position factor to the left of every momentum factor and a
2x2 sympy matrix coefficient M (polynomial in hbar, cinv = 1/c, m, e
and background parameters).  Products are reduced to this normal form
with the one-axis identity

    p^n x^m = sum_k  C(n,k) C(m,k) k! (-i hbar)^k  x^{m-k} p^{n-k}

applied axis by axis (different axes commute; matrices commute with
x and p).  Working with cinv as an ordinary polynomial symbol makes
"order in 1/c" a plain minimal-degree question, which is how the
correspondence with the classical brackets is graded.
"""

from __future__ import annotations

from math import comb

import sympy as sp

hbar, cinv, m, e = sp.symbols("hbar cinv m e", real=True)

I2 = sp.eye(2)
ZERO2 = sp.zeros(2, 2)
SIGMA = (
    sp.Matrix([[0, 1], [1, 0]]),
    sp.Matrix([[0, -sp.I], [sp.I, 0]]),
    sp.Matrix([[1, 0], [0, -1]]),
)

_ZKEY = (0, 0, 0, 0, 0, 0)


def _clean(Mat):
    return sp.expand(Mat)


class Op:
    """Finite normal-ordered operator; terms maps exponent keys
    (a1,a2,a3,b1,b2,b3) to 2x2 matrix coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, Mat in terms.items():
                Mat = _clean(Mat)
                if not Mat.is_zero_matrix:
                    self.terms[k] = Mat

    # -- constructors ------------------------------------------------

    @classmethod
    def scalar(cls, expr):
        return cls({_ZKEY: sp.sympify(expr) * I2})

    @classmethod
    def matrix(cls, Mat):
        return cls({_ZKEY: sp.Matrix(Mat)})

    @classmethod
    def x(cls, i):
        k = [0] * 6
        k[i - 1] = 1
        return cls({tuple(k): I2})

    @classmethod
    def p(cls, i):
        k = [0] * 6
        k[3 + i - 1] = 1
        return cls({tuple(k): I2})

    @classmethod
    def sigma(cls, k):
        return cls({_ZKEY: SIGMA[k - 1]})

    # -- ring operations ---------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Op):
            other = Op.scalar(other)
        out = dict(self.terms)
        for k, Mat in other.terms.items():
            out[k] = out[k] + Mat if k in out else Mat
        return Op(out)

    __radd__ = __add__

    def __neg__(self):
        return Op({k: -Mat for k, Mat in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Op):
            other = Op.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return Op.scalar(other) + (-self)

    def scale(self, expr):
        expr = sp.sympify(expr)
        return Op({k: expr * Mat for k, Mat in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Op):  # pragma: no cover - __mul__ handles it
            return NotImplemented
        return self.scale(other)

    def __mul__(self, other):
        if not isinstance(other, Op):
            return self.scale(other)
        out = {}
        for ka, Ma in self.terms.items():
            a, b = ka[:3], ka[3:]
            for kb, Mb in other.terms.items():
                c, d = kb[:3], kb[3:]
                Mab = Ma * Mb
                for key, coeff in _reorder(a, b, c, d):
                    add = coeff * Mab
                    out[key] = out[key] + add if key in out else add
        return Op(out)

    def __eq__(self, other):
        return (self - other).is_zero()

    def __hash__(self):  # pragma: no cover - Ops are not dict keys
        raise TypeError("Op is unhashable")

    # -- involution and predicates -------------------------------------

    def adjoint(self):
        """Hermitian conjugate, back in normal order."""
        out = {}
        for k, Mat in self.terms.items():
            a, b = k[:3], k[3:]
            MH = Mat.H
            # (x^a p^b)^dagger = M^dagger p^b x^a; the reorder factors
            # are plain rewriting, they are not conjugated
            for key, coeff in _reorder((0, 0, 0), b, a, (0, 0, 0)):
                add = coeff * MH
                out[key] = out[key] + add if key in out else add
        return Op(out)

    def is_zero(self):
        return not self.terms

    def is_hermitian(self):
        return (self - self.adjoint()).is_zero()

    def min_cinv_order(self):
        """Minimal degree in cinv over all nonzero coefficients;
        None for the zero operator."""
        best = None
        for Mat in self.terms.values():
            for entry in Mat:
                entry = sp.expand(entry)
                if entry == 0:
                    continue
                poly = sp.Poly(entry, cinv)
                deg = min(mon[0] for mon in poly.monoms())
                best = deg if best is None else min(best, deg)
        return best

    def coefficient_of_cinv(self, order):
        """The operator multiplying cinv**order (cinv set to 1 there)."""
        out = {}
        for k, Mat in self.terms.items():
            New = sp.zeros(2, 2)
            for r in range(2):
                for c in range(2):
                    entry = sp.expand(Mat[r, c])
                    New[r, c] = entry.coeff(cinv, order)
            if not New.is_zero_matrix:
                out[k] = New
        return Op(out)

    def __repr__(self):
        if not self.terms:
            return "Op(0)"
        bits = []
        names = ("x1", "x2", "x3", "p1", "p2", "p3")
        for k in sorted(self.terms):
            mono = " ".join(f"{n}^{ex}" if ex > 1 else n
                            for n, ex in zip(names, k) if ex)
            bits.append(f"[{mono or '1'}] {self.terms[k].tolist()}")
        return "Op(" + " + ".join(bits) + ")"


def _reorder(a, b, c, d):
    """Normal-order x^a p^b x^c p^d; yields ((key, scalar), ...)."""
    # per-axis sums over contraction count k_t
    axes = []
    for t in range(3):
        opts = []
        for k in range(min(b[t], c[t]) + 1):
            coeff = (comb(b[t], k) * comb(c[t], k) * sp.factorial(k)
                     * (-sp.I * hbar) ** k)
            opts.append((k, coeff))
        axes.append(opts)
    for k1, c1 in axes[0]:
        for k2, c2 in axes[1]:
            for k3, c3 in axes[2]:
                ks = (k1, k2, k3)
                key = tuple(a[t] + c[t] - ks[t] for t in range(3)) + \
                      tuple(b[t] + d[t] - ks[t] for t in range(3))
                yield key, c1 * c2 * c3


def commutator(A, B):
    return A * B - B * A


def anticommutator(A, B):
    return A * B + B * A


def dot(ops_a, ops_b):
    """Sum of componentwise products of two 3-tuples of operators."""
    out = Op()
    for Aa, Bb in zip(ops_a, ops_b):
        out = out + Aa * Bb
    return out


def cross(ops_a, ops_b):
    """Componentwise operator cross product (no symmetrization)."""
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        out.append(ops_a[j] * ops_b[k] - ops_a[k] * ops_b[j])
    return tuple(out)
