"""Group parameters and element arithmetic.

Elements are plain (a, b) tuples with 0 <= a < x_mod and 0 <= b < y_mod,
multiplying by

    (a1, b1) * (a2, b2) = (a1 + a2 * alpha^b1 mod x_mod, b1 + b2 mod y_mod)

so x = (1, 0) and y = (0, 1) satisfy y x y^-1 = x^alpha. The twist satisfies
alpha^(y_mod) == 1 (mod x_mod) in every construction here. Hot-path ops skip
per-element range validation; use make_element at boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import numtheory as nt
from .errors import AbelianGroup, InvalidPrime, Overflow, RTooSmall

Element = tuple[int, int]

#: identity element of every group in this module
IDENTITY: Element = (0, 0)

ORDER_GUARD = 2**63

CLASS_ABELIAN = "abelian"
CLASS1 = "class1"
CLASS2 = "class2"


@dataclass(frozen=True)
class SemidirectGroup:
    """Z_{x_mod} x| Z_{p^2} with y-conjugation scaling x by alpha."""

    x_mod: int
    p: int
    alpha: int
    y_mod: int

    @property
    def order(self) -> int:
        return self.x_mod * self.y_mod


@dataclass(frozen=True)
class GroupParams(SemidirectGroup):
    """The prime-power case Z_{p^r} x| Z_{p^2} with alpha = tau*p^(r-2) + 1."""

    r: int
    tau: int
    class_tag: str
    unclassified: bool


def make_semidirect(x_mod: int, p: int, alpha: int) -> SemidirectGroup:
    """Generic constructor; validates the twist order divides p^2."""
    if x_mod < 1 or p < 2:
        raise ValueError("x_mod and p must be positive")
    if x_mod * p * p >= ORDER_GUARD:
        raise Overflow("group order must stay below 2**63")
    alpha %= x_mod
    if math.gcd(alpha, x_mod) != 1 or nt.mod_pow(alpha, p * p, x_mod) != 1:
        raise ValueError("alpha must be a unit of order dividing p^2")
    return SemidirectGroup(x_mod=x_mod, p=p, alpha=alpha, y_mod=p * p)


def make_group(p: int, r: int, tau: int, allow_unclassified: bool = False) -> GroupParams:
    """Build Z_{p^r} x| Z_{p^2} from (p, r, tau).

    tau is reduced mod p^2. gcd(tau, p^2) decides the twist order: 1 -> full
    order p^2 ("class1"), p -> order p ("class2"), p^2 -> trivial
    ("abelian"). The classified solver needs r > 4; 3 <= r <= 4 is allowed
    only with allow_unclassified=True (brute-force experiments).
    """
    if not nt.is_prime(p) or p == 2:
        raise InvalidPrime(f"p must be an odd prime, got {p}")
    if r <= 2:
        raise RTooSmall(f"r must be at least 3, got {r}")
    unclassified = r <= 4
    if unclassified and not allow_unclassified:
        raise RTooSmall(
            f"r={r} is below the classified range (r > 4); "
            "pass allow_unclassified=True for brute-force experiments"
        )
    y_mod = p * p
    tau %= y_mod
    x_mod = p**r
    if x_mod * y_mod >= ORDER_GUARD:
        raise Overflow("group order p^(r+2) must stay below 2**63")
    alpha = (tau * p ** (r - 2) + 1) % x_mod
    g = math.gcd(tau, y_mod)
    class_tag = CLASS1 if g == 1 else CLASS2 if g == p else CLASS_ABELIAN
    return GroupParams(
        x_mod=x_mod,
        p=p,
        alpha=alpha,
        y_mod=y_mod,
        r=r,
        tau=tau,
        class_tag=class_tag,
        unclassified=unclassified,
    )


@lru_cache(maxsize=None)
def _alpha_pows(gp: SemidirectGroup) -> tuple[int, ...]:
    """alpha^b mod x_mod for every b; alpha^y_mod == 1 keeps this a cycle."""
    out = [1]
    for _ in range(gp.y_mod - 1):
        out.append(out[-1] * gp.alpha % gp.x_mod)
    return tuple(out)


def make_element(gp: SemidirectGroup, a: int, b: int) -> Element:
    if not (0 <= a < gp.x_mod and 0 <= b < gp.y_mod):
        raise ValueError(f"element ({a}, {b}) out of range for this group")
    return (a, b)


def mul(gp: SemidirectGroup, g1: Element, g2: Element) -> Element:
    a1, b1 = g1
    a2, b2 = g2
    return ((a1 + a2 * _alpha_pows(gp)[b1]) % gp.x_mod, (b1 + b2) % gp.y_mod)


def inv(gp: SemidirectGroup, g: Element) -> Element:
    a, b = g
    apow = _alpha_pows(gp)
    return (-a * apow[-b % gp.y_mod] % gp.x_mod, -b % gp.y_mod)


def _geometric_sum(beta: int, k: int, modulus: int) -> int:
    """1 + beta + ... + beta^(k-1) mod modulus, by binary splitting.

    beta - 1 is typically a zero divisor here, so no closed-form division.
    """
    if k == 0:
        return 0
    half = _geometric_sum(beta, k // 2, modulus)
    total = half * (1 + nt.mod_pow(beta, k // 2, modulus)) % modulus
    if k % 2:
        total = (total + nt.mod_pow(beta, k - 1, modulus)) % modulus
    return total


def power(gp: SemidirectGroup, g: Element, k: int) -> Element:
    """g^k for any integer k, in O(log k) multiplications."""
    if k < 0:
        return inv(gp, power(gp, g, -k))
    a, b = g
    beta = _alpha_pows(gp)[b]
    return (a * _geometric_sum(beta, k, gp.x_mod) % gp.x_mod, k * b % gp.y_mod)


def conjugate(gp: SemidirectGroup, g: Element, h: Element) -> Element:
    """h g h^-1."""
    return mul(gp, mul(gp, h, g), inv(gp, h))


def element_order(gp: SemidirectGroup, g: Element) -> int:
    """Exact multiplicative order of g (divisor-refinement over |G|)."""
    order = gp.order
    for q, e in nt.factorize(order).items():
        for _ in range(e):
            if power(gp, g, order // q) == IDENTITY:
                order //= q
            else:
                break
    return order


def commutator_depth(gp: GroupParams) -> int:
    """c with [G, G] = <x^(p^(r-c))>: 2 for class1, 1 for class2."""
    if gp.class_tag == CLASS_ABELIAN:
        raise AbelianGroup("tau = 0: the group is abelian, commutator is trivial")
    return 2 if gp.class_tag == CLASS1 else 1


def abelianization_map(gp: GroupParams, g: Element) -> tuple[int, int]:
    """Projection to G/[G,G] = Z_{p^(r-c)} x Z_{p^2}."""
    c = commutator_depth(gp)
    a, b = g
    return (a % gp.p ** (gp.r - c), b)
