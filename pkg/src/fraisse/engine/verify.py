"""Bounded verification of cofinality (G1) and the delayed extension property (G2)."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..amalgamation import arrows_out
from ..core import Sequence
from ..verdict import Verdict


@dataclass
class WFReport:
    """Witnesses for a weak Fraisse check.

    ``g1`` maps an object id to ``(stage, arrow)``; ``g2`` maps ``n`` to
    ``{"m": m, "witnesses": [(f, k, g), ...]}`` with ``g o f o u_n^m == u_n^k``.
    """

    depth: int
    bound: int
    g1: dict = field(default_factory=dict)
    g2: dict = field(default_factory=dict)
    missing_g1: list = field(default_factory=list)
    missing_g2: list = field(default_factory=list)
    verdict: Verdict | None = None

    @property
    def ok(self) -> bool:
        return self.verdict is not None and self.verdict.ok

    def replay(self, seq: Sequence) -> bool:
        """Re-check every recorded witness equation exactly."""
        cat = seq.category
        for k, f in self.g1.values():
            if f.cod != seq[k] or not cat.is_arrow(f):
                return False
        for n, entry in self.g2.items():
            m = entry["m"]
            for f, k, g in entry["witnesses"]:
                if cat.chain(g, f, seq.bonding(n, m)) != seq.bonding(n, k):
                    return False
        return True


def g2_witnesses(seq: Sequence, n: int, m: int, bound: int, grow: bool = False):
    """Witnesses for every test arrow out of ``u_m``, or ``None`` at the first miss."""
    cat = seq.category
    out = []
    for f in arrows_out(cat, seq[m], bound):
        found = seq.witness(n, cat.compose(f, seq.bonding(n, m)), grow=grow)
        if found is None:
            return None
        out.append((f, found[0], found[1]))
    return out


def verify_wf(seq: Sequence, depth: int, bound: int, max_lag: int = 6, max_tests: int = 4096) -> WFReport:
    """Check (G1) on objects up to ``bound`` and (G2) for every ``n < depth``.

    A miss is a definitive failure only for a sequence without a growth hook,
    whose recorded prefix is all there is; otherwise the verdict is unknown.
    The stage ``m`` in (G2) is searched up to ``n + max_lag``, skipping stages
    with more than ``max_tests`` test arrows.
    """
    cat = seq.category
    if len(seq) < depth + 1:
        raise ValueError(f"sequence has {len(seq)} stages, need at least {depth + 1}")
    report = WFReport(depth=depth, bound=bound)
    objs = cat.objects() if cat.finite else cat.objects(bound)
    for x in objs:
        found = seq.cover(x)
        if found is None:
            report.missing_g1.append(x)
        else:
            report.g1[cat.object_id(x)] = found
    for n in range(depth):
        for m in range(n + 1, min(len(seq), n + max_lag + 1)):
            if not cat.finite and cat.extension_count(seq[m]) > max_tests:
                break
            wit = g2_witnesses(seq, n, m, bound)
            if wit is not None:
                report.g2[n] = {"m": m, "witnesses": wit}
                break
        else:
            report.missing_g2.append(n)
    if not report.missing_g1 and not report.missing_g2:
        if not report.replay(seq):
            report.verdict = Verdict.fails({"reason": "witness replay"}, bound=bound)
        else:
            report.verdict = Verdict.holds(report, bound=bound,
                                           notes=[f"(G1) on objects <= {bound}, (G2) for n < {depth}"])
        return report
    cex = {"g1": report.missing_g1, "g2": report.missing_g2}
    if seq.grower is not None:
        report.verdict = Verdict.unknown(counterexample=cex, bound=bound,
                                         notes=["misses within recorded stages; the sequence can grow"])
    else:
        report.verdict = Verdict.fails(cex, bound=bound, notes=["misses within recorded stages"])
    return report
