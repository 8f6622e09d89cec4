"""End-to-end verification suite driven by the command line.

Each item pits a constructive result against the brute-force oracles:
sl2 commutation relations, module spans of the power-kernel generating
sets, exact commutation of the constructed centralizer generators, span
equality between the enumerated centralizer and the coefficient-ladder
derivations, decomposition round-trips over the constants field, and
the fraction-field rank of the generator family.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .linearder import (
    decompose_over_constants,
    jordan_nilpotent,
    verify_decomposition,
)
from .oracle import (
    centralizer_basis,
    derivation_span_equal,
    kernel_power_basis,
    module_span_check,
    rank_over_fractions,
)
from .registry import KernelEntry, registry_entry
from .weitzenboeck import (
    centralizer_generators,
    commuting_derivation,
    generator_set,
    sl2_triple,
    weitzenboeck_derivation,
)

# Decomposition round-trips are capped at this coefficient degree; the
# enumerated centralizer grows quickly with the requested degree.
DECOMPOSE_DEGREE_CAP = 3


@dataclass(frozen=True)
class ItemResult:
    name: str
    ok: bool
    detail: str
    certificate: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "detail": self.detail}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _guarded(name: str, fn) -> ItemResult:
    try:
        return fn()
    except Exception as exc:  # report failures as items, do not crash the suite
        return ItemResult(
            name, False, f"{type(exc).__name__}: {exc}", {"error": str(exc)}
        )


def run_verification(
    n: int,
    degree: int,
    seed: int = 0,
    registry_path: str | Path | None = None,
) -> list[ItemResult]:
    entry: KernelEntry = registry_entry(n, registry_path)
    D = weitzenboeck_derivation(n)
    items: list[ItemResult] = []

    def sl2_item() -> ItemResult:
        triple = sl2_triple(n)
        ok = (
            triple.d.bracket(triple.dhat) == triple.h
            and triple.h.bracket(triple.d) == triple.d * 2
            and triple.h.bracket(triple.dhat) == triple.dhat * (-2)
        )
        return ItemResult("sl2-relations", ok, "commutation relations hold exactly")

    items.append(_guarded("sl2-relations", sl2_item))

    for i in range(1, n + 1):
        def span_item(level: int = i) -> ItemResult:
            S = generator_set(n, entry.generators, level)
            target = kernel_power_basis(D, level, degree)
            result = module_span_check(S, entry.generators, target, degree)
            return ItemResult(
                f"power-kernel-span-i{level}",
                result.ok,
                f"kernel of D^{level} up to degree {degree}: "
                f"{target.dimension()} basis vectors against {len(S.elements)} "
                f"generators",
                result.certificate if not result.ok else None,
            )

        items.append(_guarded(f"power-kernel-span-i{i}", span_item))

    def commutation_item() -> ItemResult:
        gens = centralizer_generators(n, entry.generators)
        for g in gens:
            if not g.derivation.bracket(D).is_zero():
                return ItemResult(
                    "centralizer-commutation",
                    False,
                    f"generator from s = {g.element.poly} does not commute",
                    {"element": g.element.to_json()},
                )
        return ItemResult(
            "centralizer-commutation",
            True,
            f"all {len(gens)} constructed generators commute exactly",
        )

    items.append(_guarded("centralizer-commutation", commutation_item))

    def ladder_item() -> ItemResult:
        enumerated = centralizer_basis(D, degree)
        ladders = [
            commuting_derivation(f, n)
            for f in kernel_power_basis(D, n, degree).vectors
        ]
        ok = derivation_span_equal(enumerated, ladders)
        return ItemResult(
            "commuting-ladder-equivalence",
            ok,
            f"enumerated centralizer (dim {len(enumerated)}) vs coefficient "
            f"ladders (count {len(ladders)}) at degree {degree}",
        )

    items.append(_guarded("commuting-ladder-equivalence", ladder_item))

    def decompose_item() -> ItemResult:
        cap = min(degree, DECOMPOSE_DEGREE_CAP)
        block = jordan_nilpotent(n)
        for T in centralizer_basis(D, cap):
            dec = decompose_over_constants(T, block)
            if not verify_decomposition(dec, D):
                return ItemResult(
                    "constants-decomposition-roundtrip",
                    False,
                    f"round-trip failed for {T}",
                    {"derivation": T.to_json()},
                )
        return ItemResult(
            "constants-decomposition-roundtrip",
            True,
            f"every enumerated centralizer element of coefficient degree <= "
            f"{cap} decomposes and recombines exactly",
        )

    items.append(_guarded("constants-decomposition-roundtrip", decompose_item))

    def rank_item() -> ItemResult:
        gens = centralizer_generators(n, entry.generators)
        result = rank_over_fractions([g.derivation for g in gens], seed=seed)
        return ItemResult(
            "fraction-rank",
            result.rank == n,
            f"rank {result.rank} over the fraction field (expected {n}), "
            f"method {result.method}",
            result.to_json() if result.rank != n else None,
        )

    items.append(_guarded("fraction-rank", rank_item))
    return items


def first_failure(items: list[ItemResult]) -> ItemResult | None:
    return next((item for item in items if not item.ok), None)
