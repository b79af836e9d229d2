"""Forbidden-cycle families, k-density certification, and bound oracles.

Families are constructed only from the spec mini-language so that density
certification stays decidable:

    all-ge:K      every cycle of length >= K
    odd-ge:K      every odd cycle of length >= K
    odd           every odd cycle
    list:5,7,13   a finite list
    geom:B,C      {B^r + C : r >= 0}, truncated below 3
"""

from __future__ import annotations

from dataclasses import dataclass


class FamilySpecError(ValueError):
    """Unparseable or invalid family specification."""


@dataclass(frozen=True)
class CycleFamily:
    """Membership predicate over cycle lengths >= 3, plus metadata."""

    spec: str
    kind: str  # all-ge | odd-ge | odd | list | geom
    threshold: int = 0
    lengths: frozenset[int] = frozenset()
    base: int = 0
    offset: int = 0

    def is_forbidden(self, length: int) -> bool:
        if length < 3:
            raise ValueError(f"cycle length must be >= 3, got {length}")
        if self.kind == "all-ge":
            return length >= self.threshold
        if self.kind == "odd-ge":
            return length % 2 == 1 and length >= self.threshold
        if self.kind == "odd":
            return length % 2 == 1
        if self.kind == "list":
            return length in self.lengths
        # geom: length == base^r + offset for some r >= 0
        rest = length - self.offset
        if rest < 1:
            return False
        while rest % self.base == 0:
            rest //= self.base
        return rest == 1 and length >= 3

    def next_forbidden(self, length: int) -> int | None:
        """Smallest forbidden length >= max(length, 3), None past a finite max."""
        probe = max(length, 3)
        if self.kind == "list":
            candidates = [x for x in self.lengths if x >= probe]
            return min(candidates) if candidates else None
        if self.kind == "all-ge":
            return max(probe, self.threshold)
        if self.kind == "odd-ge":
            lo = max(probe, self.threshold)
            return lo if lo % 2 == 1 else lo + 1
        if self.kind == "odd":
            return probe if probe % 2 == 1 else probe + 1
        # geom
        r = 0
        while True:
            val = self.base**r + self.offset
            if val >= probe and val >= 3:
                return val
            r += 1

    @property
    def min_forbidden(self) -> int | None:
        return self.next_forbidden(3)

    def is_finite(self) -> bool:
        return self.kind == "list"

    def forbidden_up_to(self, limit: int) -> list[int]:
        out = []
        probe = 3
        while probe <= limit:
            nxt = self.next_forbidden(probe)
            if nxt is None or nxt > limit:
                break
            out.append(nxt)
            probe = nxt + 1
        return out

    def __str__(self) -> str:
        return self.spec


def parse_family(spec: str) -> CycleFamily:
    spec = spec.strip()
    if spec == "odd":
        return CycleFamily(spec=spec, kind="odd")
    if ":" not in spec:
        raise FamilySpecError(f"bad family spec {spec!r}")
    head, _, arg = spec.partition(":")
    try:
        if head == "all-ge":
            k = int(arg)
            if k < 3:
                raise FamilySpecError(f"all-ge threshold must be >= 3, got {k}")
            return CycleFamily(spec=spec, kind="all-ge", threshold=k)
        if head == "odd-ge":
            k = int(arg)
            if k < 3:
                raise FamilySpecError(f"odd-ge threshold must be >= 3, got {k}")
            return CycleFamily(spec=spec, kind="odd-ge", threshold=k)
        if head == "list":
            lengths = frozenset(int(x) for x in arg.split(","))
            if not lengths or min(lengths) < 3:
                raise FamilySpecError(f"list lengths must all be >= 3: {spec!r}")
            return CycleFamily(spec=spec, kind="list", lengths=lengths)
        if head == "geom":
            base_s, offset_s = arg.split(",")
            base, offset = int(base_s), int(offset_s)
            if base < 2:
                raise FamilySpecError(f"geom base must be >= 2, got {base}")
            if 1 + offset < 3 and base + offset < 3:
                raise FamilySpecError(f"geom family {spec!r} has no length >= 3")
            return CycleFamily(spec=spec, kind="geom", base=base, offset=offset)
    except FamilySpecError:
        raise
    except ValueError as exc:
        raise FamilySpecError(f"bad family spec {spec!r}: {exc}") from exc
    raise FamilySpecError(f"unknown family kind {head!r}")


@dataclass(frozen=True)
class GapCheck:
    lower: int  # forbidden length l_i
    upper: int  # next forbidden length l_{i+1}
    bound: int  # 3 + (k-2)(l_i - 3)
    ok: bool


@dataclass(frozen=True)
class DensityCertificate:
    family: str
    k: int
    horizon: int
    dense: bool
    failure: str | None  # first violated condition, when not dense
    per_gap: tuple[GapCheck, ...]

    def summary(self) -> str:
        verdict = "dense" if self.dense else f"not-dense ({self.failure})"
        lines = [
            f"family={self.family} k={self.k} horizon={self.horizon}: {verdict}"
        ]
        for gap in self.per_gap:
            mark = "ok" if gap.ok else "VIOLATED"
            lines.append(
                f"  gap {gap.lower} -> {gap.upper}: need <= {gap.bound} [{mark}]"
            )
        return "\n".join(lines)


def certify_k_dense(
    family: CycleFamily, k: int, horizon: int = 200, min_gap_lengths: int = 12
) -> DensityCertificate:
    """Certify the three density conditions for 3 <= s <= horizon, plus the
    per-gap inequality l_{i+1} <= 3 + (k-2)(l_i - 3) that controls every
    window starting past the checked horizon."""
    if k < 5:
        raise ValueError(f"density is defined for k >= 5, got {k}")

    def fail(reason: str, gaps=()) -> DensityCertificate:
        return DensityCertificate(
            family=family.spec, k=k, horizon=horizon,
            dense=False, failure=reason, per_gap=tuple(gaps),
        )

    # condition 1: C_k (and C_{k+1} for k >= 6) forbidden
    if not family.is_forbidden(k):
        return fail(f"condition 1: C_{k} not forbidden")
    if k >= 6 and not family.is_forbidden(k + 1):
        return fail(f"condition 1: C_{k + 1} not forbidden")
    # condition 2: nothing below k
    for ell in range(3, k):
        if family.is_forbidden(ell):
            return fail(f"condition 2: C_{ell} forbidden below k={k}")
    # condition 3, checked directly for every window start up to the horizon
    for s in range(3, horizon + 1):
        lo, hi = s + 2, 3 + (k - 2) * (s - 2)
        nxt = family.next_forbidden(lo)
        if nxt is None or nxt > hi:
            return fail(f"condition 3: no forbidden length in [{lo},{hi}] (s={s})")
    # per-gap inequality over the forbidden lengths inside the horizon range:
    # consecutive forbidden l_i < l_{i+1} must satisfy l_{i+1} <= 3+(k-2)(l_i-3),
    # which covers the worst window start s = l_i - 1 for all s beyond the horizon
    gaps = []
    top = 3 + (k - 2) * (horizon - 2)
    listed = family.forbidden_up_to(top)
    if not family.is_finite():
        while len(listed) < min_gap_lengths:
            nxt = family.next_forbidden((listed[-1] if listed else 2) + 1)
            if nxt is None:
                break
            listed.append(nxt)
    ok = True
    for lo, hi in zip(listed, listed[1:]):
        bound = 3 + (k - 2) * (lo - 3)
        good = hi <= bound
        gaps.append(GapCheck(lower=lo, upper=hi, bound=bound, ok=good))
        ok = ok and good
    if not family.is_finite():
        tail = family.next_forbidden(listed[-1] + 1) if listed else None
        if tail is not None and listed:
            bound = 3 + (k - 2) * (listed[-1] - 3)
            good = tail <= bound
            gaps.append(GapCheck(lower=listed[-1], upper=tail, bound=bound, ok=good))
            ok = ok and good
    else:
        # a finite family always runs out of windows eventually
        return fail("condition 3: finite family fails for large s", gaps)
    if not ok:
        first_bad = next(g for g in gaps if not g.ok)
        return fail(
            f"per-gap inequality: {first_bad.upper} > {first_bad.bound} after {first_bad.lower}",
            gaps,
        )
    return DensityCertificate(
        family=family.spec, k=k, horizon=horizon,
        dense=True, failure=None, per_gap=tuple(gaps),
    )


def erdos_gallai_bound(n: int, k: int) -> int:
    """Edge bound floor((k-1)(n-1)/2) for graphs with no cycle of length >= k."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    return (k - 1) * (n - 1) // 2
