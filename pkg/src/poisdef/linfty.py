"""Homotopy transfer of the Poisson graded Lie algebra to its cohomology.

Multivector fields form a graded Lie algebra g under the Schouten bracket,
with grading |P| = (multivector degree of P) - 1 and differential
d = [pi, .] for the exact Poisson bivector pi of the potential.  Its
cohomology H carries a transferred L-infinity structure (higher brackets
ell_n) together with an L-infinity quasi-isomorphism (Taylor coefficients
f_n) from H into g.  This module computes both, order by order, using the
canonical basis representatives of :mod:`poisdef.cohomology` and the
canonical coboundary solver.

Conventions (graded skew-symmetric, Koszul signs chi):

* ell_1 = 0 and f_1 realizes a class as its canonical representative;
* ell_2([a], [b]) = [ [f_1 a, f_1 b] ] is the induced bracket, and
  f_2 is the explicit homotopy table :func:`f2_table`;
* for n >= 3 the obstruction combination is

      T_n(x_1, ..., x_n) = S_n - U_n,

      S_n = sum over j + k = n + 1 (j, k >= 2) and (k, n-k)-shuffles s of
            chi(s) * (-1)^(k*(j-1)) * f_j(ell_k(x_{s(1..k)}), x_{s(k+1..n)}),
      U_n = sum over s + t = n (s, t >= 1) and (s, t)-shuffles tau with
            tau(1) = 1 of chi(tau) * e_{s,t}(tau) *
            [f_s(x_{tau(1..s)}), f_t(x_{tau(s+1..n)})],
      e_{s,t}(tau) = (-1)^(s-1) *
            (-1)^((t-1) * (|x_{tau(1)}| + ... + |x_{tau(s)}|)),

  which is closed, and the recursion sets

      ell_n = -[T_n]          (projection of T_n to cohomology),
      d f_n = T_n + f_1(ell_n)   with f_n the canonical coboundary solve,

  choosing f_n = 0 on tuples of bivector classes (degree-1 inputs), where
  T_n vanishes identically for n >= 3.

The same chi-weighted sums give the generalized Jacobi combination

    J_n = sum over i + j = n + 1 (i, j >= 2) and (i, n-i)-shuffles s of
          chi(s) * (-1)^(i*(j-1)) * ell_j(ell_i(x_{s(1..i)}), x_{s(i+1..n)}),

which must vanish for an L-infinity structure, and the morphism residual

    E_n = d(f_n(x)) - f_1(ell_n(x)) - T_n(x),

which must vanish for an L-infinity morphism; both are exposed for
verification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .algebra import Poly
from .cohomology import (
    BasisLabel,
    CohClass,
    CohomologyError,
    f1,
    label_weight,
    project,
    realize,
    solve_coboundary,
)
from .multivec import (
    MultiVec,
    coboundary,
    euler_field,
    perm_sign,
    poisson_from_potential,
    schouten,
    shuffles,
)
from .singularity import SingularityData


class ArityCapExceededError(CohomologyError):
    """A transfer computation needed a bracket above the arity cap."""


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Koszul sign of reordering graded symbols by a permutation.

    ``perm`` lists (s(1), ..., s(n)) with 1-based values; ``degrees`` are
    the degrees of the original symbols x_1, ..., x_n.  The sign is -1 to
    the number of inversions of the permutation weighted by products of
    the degrees carried past each other:

        x_1 ^ ... ^ x_n = sign * x_{s(1)} ^ ... ^ x_{s(n)}
    """
    exponent = 0
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b]:
                exponent += degrees[perm[a] - 1] * degrees[perm[b] - 1]
    return -1 if exponent % 2 else 1


def koszul_chi(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Permutation sign times Koszul sign: the weight of graded skew sums."""
    return perm_sign(perm) * koszul_sign(perm, degrees)


def f2_table(data: SingularityData, a: BasisLabel, b: BasisLabel) -> MultiVec:
    """The closed-form homotopy f_2 on a pair of basis labels.

    Total in both arguments: out-of-order pairs are folded through graded
    symmetry f_2(b, a) = chi * f_2(a, b).  The value is a multivector of
    degree |a| + |b| (degrees above 3 are identically zero carriers).
    """
    if b.sort_key() < a.sort_key():
        chi = koszul_chi((2, 1), (a.g_degree, b.g_degree))
        return f2_table(data, b, a) * chi
    ga, gb = a.g_degree, b.g_degree
    degree = ga + gb
    phi = data.phi
    pair = (a.kind, b.kind)
    if pair == ("Cas", "B"):
        i = a.indices[0]
        (r,) = b.indices
        if i == 0:
            return MultiVec.zero(degree)
        value = (phi ** (i - 1)) * Poly.monomial(data.basis[r]) * i
        return MultiVec.function(value)
    if pair == ("Cas", "Top"):
        i = a.indices[0]
        j, s = b.indices
        if data.special or s != 0 or i == 0:
            return MultiVec.zero(degree)
        scale = Fraction(i, data.weights.total - data.d)
        factor = (phi ** (i + j - 1)) * scale
        return euler_field(data.weights).mul_poly(factor)
    if pair == ("Eul", "B"):
        i = a.indices[0]
        (r,) = b.indices
        if i == 0:
            return MultiVec.zero(degree)
        total = data.weights.total
        scale = Fraction(data.basis_weight(r) - total, total) - i
        factor = (phi ** (i - 1)) * Poly.monomial(data.basis[r]) * scale
        return euler_field(data.weights).mul_poly(factor)
    if pair == ("A", "B"):
        i, k = a.indices
        (r,) = b.indices
        factor = (phi ** i) * Poly.monomial(data.basis[k])
        return poisson_from_potential(Poly.monomial(data.basis[r])).mul_poly(factor)
    # every other pair of basis classes has vanishing homotopy
    return MultiVec.zero(degree)


def _canonical(labels: Sequence[BasisLabel]) -> tuple[Optional[tuple], int]:
    """Sort a label tuple into canonical order, tracking the Koszul sign.

    Returns (sorted tuple, chi) with value(labels) = chi * value(sorted);
    (None, 0) when the value is forced to vanish because a label of even
    degree repeats.
    """
    n = len(labels)
    order = sorted(range(n), key=lambda i: labels[i].sort_key())
    perm = tuple(i + 1 for i in order)
    key = tuple(labels[i] for i in order)
    for i in range(n - 1):
        if key[i] == key[i + 1] and key[i].g_degree % 2 == 0:
            return None, 0
    degrees = [lab.g_degree for lab in labels]
    return key, koszul_chi(perm, degrees)


@dataclass
class TransferState:
    """Memoized engine for the transferred brackets and homotopies.

    One state per potential; values of ell_n and f_n on canonical label
    tuples are cached, and every request is reduced to the cache through
    graded symmetry.  ``arity_cap`` bounds the bracket arity that may be
    demanded (requests above it raise ArityCapExceededError).
    """

    data: SingularityData
    arity_cap: int = 4
    _ell_memo: dict = field(default_factory=dict, repr=False)
    _f_memo: dict = field(default_factory=dict, repr=False)

    # -- label-tuple level -------------------------------------------------

    def _check_arity(self, n: int) -> None:
        if n < 1:
            raise ValueError("bracket arity must be at least 1")
        if n > self.arity_cap:
            raise ArityCapExceededError(
                f"arity {n} exceeds the configured cap {self.arity_cap}"
            )

    def ell_labels(self, labels: Sequence[BasisLabel]) -> CohClass:
        """ell_n on basis labels; graded-symmetric and memoized."""
        n = len(labels)
        self._check_arity(n)
        g_out = sum(lab.g_degree for lab in labels) + 2 - n
        if n == 1:
            return CohClass.zero(g_out)
        key, chi = _canonical(labels)
        if key is None:
            return CohClass.zero(g_out)
        value = self._ell_memo.get(key)
        if value is None:
            if n == 2:
                bracket = schouten(realize(key[0], self.data),
                                   realize(key[1], self.data))
                value = project(bracket, self.data)
                self._ell_memo[key] = value
            else:
                self._compute_stage(key)
                value = self._ell_memo[key]
        return value * chi

    def f_labels(self, labels: Sequence[BasisLabel]) -> MultiVec:
        """f_n on basis labels; graded-symmetric and memoized."""
        n = len(labels)
        self._check_arity(n)
        degree_out = sum(lab.g_degree for lab in labels) + 2 - n
        if n == 1:
            return realize(labels[0], self.data)
        key, chi = _canonical(labels)
        if key is None:
            return MultiVec.zero(degree_out)
        value = self._f_memo.get(key)
        if value is None:
            if n == 2:
                value = f2_table(self.data, key[0], key[1])
                self._f_memo[key] = value
            else:
                self._compute_stage(key)
                value = self._f_memo[key]
        return value * chi

    def _compute_stage(self, key: tuple[BasisLabel, ...]) -> None:
        """Fill the caches at one canonical tuple of arity >= 3."""
        n = len(key)
        classes = [CohClass.single(lab) for lab in key]
        t_value = compute_T(self, n, classes)
        t_class = project(t_value, self.data)
        self._ell_memo[key] = -t_class
        if all(lab.g_degree == 1 for lab in key):
            # On tuples of bivector classes the obstruction vanishes
            # identically for n >= 3, which is what makes the order-by-order
            # deformation formula close; fail loudly if it ever does not.
            if not t_value.is_zero():
                raise CohomologyError(
                    f"obstruction T_{n} expected to vanish on bivector-class "
                    f"tuple {tuple(str(l) for l in key)} but did not"
                )
            self._f_memo[key] = MultiVec.zero(
                sum(lab.g_degree for lab in key) + 2 - n
            )
            return
        target = t_value + f1(self._ell_memo[key], self.data)
        self._f_memo[key] = solve_coboundary(target, self.data)

    # -- multilinear level ---------------------------------------------------

    def ell(self, classes: Sequence[CohClass]) -> CohClass:
        """ell_n extended multilinearly to rational class combinations."""
        n = len(classes)
        g_out = sum(c.g_degree for c in classes) + 2 - n
        result = CohClass.zero(g_out)
        for combo in product(*[c.coeffs for c in classes]):
            coeff = Fraction(1)
            for _, value in combo:
                coeff *= value
            result = result + self.ell_labels([lab for lab, _ in combo]) * coeff
        return result

    def f(self, classes: Sequence[CohClass]) -> MultiVec:
        """f_n extended multilinearly to rational class combinations."""
        n = len(classes)
        degree_out = sum(c.g_degree for c in classes) + 2 - n
        result = MultiVec.zero(degree_out)
        for combo in product(*[c.coeffs for c in classes]):
            coeff = Fraction(1)
            for _, value in combo:
                coeff *= value
            result = result + self.f_labels([lab for lab, _ in combo]) * coeff
        return result


def transfer_step(state: TransferState, m: int,
                  tuples: Sequence[Sequence[BasisLabel]]) -> TransferState:
    """Warm the caches of one transfer stage.

    Evaluates ell_m and f_m on every given label tuple (each of arity m)
    so later queries are cache hits; returns the same state.
    """
    for labels in tuples:
        if len(labels) != m:
            raise ValueError(f"expected arity {m} tuples, got {len(labels)}")
        state.ell_labels(tuple(labels))
        state.f_labels(tuple(labels))
    return state


def compute_T(state: TransferState, n: int,
              classes: Sequence[CohClass]) -> MultiVec:
    """The order-n obstruction T_n = S_n - U_n (see module docstring).

    Needs brackets and homotopies of arity at most n - 1, so it is the
    quantity that drives the transfer recursion at arity n.
    """
    if len(classes) != n:
        raise ValueError(f"expected {n} classes, got {len(classes)}")
    degrees = [c.g_degree for c in classes]
    degree_out = sum(degrees) + 3 - n
    total = MultiVec.zero(degree_out)
    # S_n: homotopy applied after a lower bracket
    for k in range(2, n):
        j = n + 1 - k
        outer_sign = -1 if (k * (j - 1)) % 2 else 1
        for sigma in shuffles(k, n - k):
            chi = koszul_chi(sigma, degrees)
            inner = state.ell([classes[sigma[m] - 1] for m in range(k)])
            rest = [classes[sigma[m] - 1] for m in range(k, n)]
            term = state.f([inner] + rest)
            total = total + term * (chi * outer_sign)
    # U_n: Schouten bracket of two lower homotopies
    for s in range(1, n):
        t = n - s
        for tau in shuffles(s, t):
            if tau[0] != 1:
                continue
            chi = koszul_chi(tau, degrees)
            block_degree = sum(degrees[tau[m] - 1] for m in range(s))
            exponent = (s - 1) + (t - 1) * block_degree
            sign = -1 if exponent % 2 else 1
            left = state.f([classes[tau[m] - 1] for m in range(s)])
            right = state.f([classes[tau[m] - 1] for m in range(s, n)])
            term = schouten(left, right)
            total = total - term * (chi * sign)
    return total


def check_E(state: TransferState, n: int,
            classes: Sequence[CohClass]) -> MultiVec:
    """Residual of the order-n morphism equation; zero when it holds.

    Computes d(f_n(x)) - f_1(ell_n(x)) - T_n(x) exactly.  At n = 1 this
    is just d of the canonical representative.
    """
    f_value = state.f(list(classes))
    residual = coboundary(f_value, state.data.phi)
    ell_value = state.ell(list(classes))
    residual = residual - f1(ell_value, state.data)
    residual = residual - compute_T(state, n, classes)
    return residual


def jacobiator(state: TransferState, n: int,
               classes: Sequence[CohClass]) -> CohClass:
    """The order-n generalized Jacobi combination of the brackets.

    Vanishes identically when (ell_k) is an L-infinity structure.
    """
    if len(classes) != n:
        raise ValueError(f"expected {n} classes, got {len(classes)}")
    degrees = [c.g_degree for c in classes]
    total = CohClass.zero(sum(degrees) + 3 - n)
    for i in range(2, n):
        j = n + 1 - i
        outer_sign = -1 if (i * (j - 1)) % 2 else 1
        for sigma in shuffles(i, n - i):
            chi = koszul_chi(sigma, degrees)
            inner = state.ell([classes[sigma[m] - 1] for m in range(i)])
            rest = [classes[sigma[m] - 1] for m in range(i, n)]
            term = state.ell([inner] + rest)
            total = total + term * (chi * outer_sign)
    return total
