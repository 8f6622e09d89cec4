"""Centralizer construction for the basic Weitzenboeck derivation.

The basic Weitzenboeck derivation D = x1*d2 + ... + x(n-1)*dn embeds in
an sl2 triple (D, Dhat, H).  Monomials are graded by their H-eigenvalue
(the weight); repeated Dhat-images of isobaric kernel generators,
multiplied together under a budget on the total number of lowering
steps, generate the kernels of powers of D as modules over Ker D.  Each
such product s yields a derivation with coefficient ladder D^(n-i)(s)
that commutes with D, and together these generate the centralizer of D
as a Ker D-module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .derivation import Derivation
from .errors import PreconditionError, RegistryError
from .poly import Exponent, Poly


def weitzenboeck_derivation(n: int) -> Derivation:
    """x1*d2 + x2*d3 + ... + x(n-1)*dn."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    coeffs = [Poly.zero(n)]
    coeffs += [Poly.variable(n, i) for i in range(n - 1)]
    return Derivation(tuple(coeffs))


@dataclass(frozen=True)
class Sl2Triple:
    """Derivations (d, dhat, h) with [d,dhat]=h, [h,d]=2d, [h,dhat]=-2dhat."""

    n: int
    d: Derivation
    dhat: Derivation
    h: Derivation

    def __post_init__(self):
        if self.d.bracket(self.dhat) != self.h:
            raise PreconditionError("[d, dhat] != h")
        if self.h.bracket(self.d) != self.d * 2:
            raise PreconditionError("[h, d] != 2d")
        if self.h.bracket(self.dhat) != self.dhat * (-2):
            raise PreconditionError("[h, dhat] != -2*dhat")


def sl2_triple(n: int) -> Sl2Triple:
    """The triple around the basic Weitzenboeck derivation.

    dhat sends x_i to i*(n-i)*x_(i+1) and h scales x_i by n-2i+1; the
    commutation relations are re-verified exactly at construction.
    """
    if n < 2:
        raise PreconditionError("sl2 triple needs n >= 2")
    d = weitzenboeck_derivation(n)
    dhat_coeffs = []
    h_coeffs = []
    for i in range(1, n + 1):
        if i < n:
            dhat_coeffs.append(Poly.variable(n, i) * (i * (n - i)))
        else:
            dhat_coeffs.append(Poly.zero(n))
        h_coeffs.append(Poly.variable(n, i - 1) * (n - 2 * i + 1))
    return Sl2Triple(n, d, Derivation(tuple(dhat_coeffs)), Derivation(tuple(h_coeffs)))


def monomial_weight(exponent: Exponent, n: int) -> int:
    """H-eigenvalue of a monomial: n*sum(a) - sum (2i-1)*a_i."""
    if len(exponent) != n:
        raise PreconditionError("exponent length does not match n")
    return sum(a * (n - 2 * i - 1) for i, a in enumerate(exponent))


def isobaric_components(f: Poly) -> list[tuple[int, Poly]]:
    """Split into isobaric parts; (weight, part) pairs, descending weight."""
    n = f.nvars
    buckets: dict[int, dict[Exponent, Fraction]] = {}
    for exp, c in f.terms():
        buckets.setdefault(monomial_weight(exp, n), {})[exp] = c
    return [
        (w, Poly(n, terms)) for w, terms in sorted(buckets.items(), reverse=True)
    ]


def isobaric_weight(f: Poly) -> int:
    """Weight of a nonzero isobaric polynomial; raises on mixed weights."""
    components = isobaric_components(f)
    if len(components) != 1:
        raise PreconditionError(f"polynomial is not isobaric: {f}")
    return components[0][0]


def commuting_derivation(f: Poly, n: int) -> Derivation:
    """The derivation D^(n-1)(f)*d1 + ... + D(f)*d(n-1) + f*dn.

    Requires D^n(f) = 0 (order at most n-1 under the basic Weitzenboeck
    derivation D); the result then commutes with D exactly.
    """
    if f.nvars != n:
        raise PreconditionError("polynomial variable count does not match n")
    D = weitzenboeck_derivation(n)
    chain = [f]
    for _ in range(n):
        chain.append(D(chain[-1]))
    if chain[n]:
        raise PreconditionError(
            f"order of {f} under the Weitzenboeck derivation exceeds {n - 1}"
        )
    return Derivation(tuple(chain[n - 1 - i] for i in range(n)))


@dataclass(frozen=True)
class GenElement:
    """One product of lowering-operator images of kernel generators.

    `poly` is the primitive-part normalization of the raw product;
    `scale` is the rational with raw = scale * poly.  `factors` lists
    (generator index, lowering power) pairs, repetition allowed; the
    empty tuple denotes the constant 1.
    """

    poly: Poly
    factors: tuple[tuple[int, int], ...]
    scale: Fraction

    def to_json(self) -> dict:
        return {
            "poly": self.poly.to_json(),
            "factors": [{"generator": g, "power": k} for g, k in self.factors],
            "scale": str(self.scale),
        }


@dataclass(frozen=True)
class GeneratorSet:
    """Module generators for the kernel of D^level over Ker D."""

    level: int
    elements: tuple[GenElement, ...]

    def polys(self) -> list[Poly]:
        return [e.poly for e in self.elements]

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "elements": [e.to_json() for e in self.elements],
        }


def generator_set(n: int, kernel_gens: Sequence[Poly], level: int) -> GeneratorSet:
    """Products of Dhat-images of kernel generators with lowering budget.

    Enumerates all products Dhat^(k1)(a_i1) * ... * Dhat^(kt)(a_it) with
    every k_j >= 1 and k_1 + ... + k_t <= level - 1, plus the empty
    product 1.  Vanishing factors are never used; duplicate elements
    (after primitive-part normalization) keep their first factorization.
    Elements are ordered by total degree, then descending graded-lex
    leading monomial.
    """
    if level < 1:
        raise PreconditionError("level must be >= 1")
    for g in kernel_gens:
        if g.nvars != n:
            raise PreconditionError("kernel generator variable count does not match n")
    dhat = sl2_triple(n).dhat if n >= 2 else None
    budget = level - 1

    # alphabet[j] = (gen index, lowering power, nonzero image polynomial)
    alphabet: list[tuple[int, int, Poly]] = []
    for g_idx, g in enumerate(kernel_gens):
        image = g
        for k in range(1, budget + 1):
            image = dhat(image) if dhat is not None else Poly.zero(n)
            if not image:
                break
            alphabet.append((g_idx, k, image))

    one = Poly.constant(n, 1)
    raw: list[tuple[Poly, tuple[tuple[int, int], ...]]] = []

    def extend(start: int, remaining: int, product: Poly,
               factors: tuple[tuple[int, int], ...]) -> None:
        raw.append((product, factors))
        for j in range(start, len(alphabet)):
            g_idx, k, image = alphabet[j]
            if k > remaining:
                continue
            extend(j, remaining - k, product * image, factors + ((g_idx, k),))

    extend(0, budget, one, ())

    seen: dict[Poly, GenElement] = {}
    for product, factors in raw:
        normalized = product.primitive_part()
        if normalized in seen:
            continue
        lead = product.coefficient(normalized.leading_monomial())
        seen[normalized] = GenElement(normalized, factors, lead)

    def order_key(el: GenElement):
        lead = el.poly.leading_monomial()
        return (sum(lead), tuple(-e for e in lead))

    return GeneratorSet(level, tuple(sorted(seen.values(), key=order_key)))


@dataclass(frozen=True)
class CentralizerGenerator:
    """A module generator of the centralizer, with its source element."""

    element: GenElement
    derivation: Derivation

    def to_json(self) -> dict:
        return {
            "element": self.element.to_json(),
            "derivation": self.derivation.to_json(),
        }


def centralizer_generators(
    n: int, kernel_gens: Sequence[Poly]
) -> list[CentralizerGenerator]:
    """Module generators of the centralizer of the Weitzenboeck derivation.

    Builds the level-n generator set and attaches to each element s the
    derivation with coefficient ladder D^(n-i)(s).  Every s must satisfy
    D^n(s) = 0; a violation means the supplied kernel generators were
    not actually kernel elements and raises RegistryError.
    """
    S = generator_set(n, kernel_gens, n)
    out = []
    for element in S.elements:
        try:
            deriv = commuting_derivation(element.poly, n)
        except PreconditionError as exc:
            raise RegistryError(
                f"generator-set element {element.poly} is not annihilated by "
                f"the {n}-th power of the derivation; kernel registry entry "
                f"for n={n} is corrupt"
            ) from exc
        out.append(CentralizerGenerator(element, deriv))
    return out
