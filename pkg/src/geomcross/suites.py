"""Suite execution: seeded trial loops, aggregation, and CSV reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .config import DEFAULT_TOLERANCES
from .errors import GenerationFailed
from .forms import Geometry
from .generators import SUITE_KINDS, sample_trial, trial_rng


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    deviation: float
    passed: bool
    generation_failed: bool = False
    retries: int = 0


@dataclass
class SuiteReport:
    suite: str
    geometry: str
    trials: int
    seed: int
    tolerance: float
    outcomes: list = field(default_factory=list)
    duration: float = 0.0

    @property
    def passes(self) -> int:
        return sum(1 for o in self.outcomes if o.passed)

    @property
    def failures(self) -> int:
        return sum(1 for o in self.outcomes if not o.passed)

    @property
    def generation_failures(self) -> int:
        return sum(1 for o in self.outcomes if o.generation_failed)

    @property
    def max_deviation(self) -> float:
        devs = [o.deviation for o in self.outcomes if not o.generation_failed]
        return max(devs) if devs else float("nan")

    @property
    def all_passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        status = "PASS" if self.all_passed else "FAIL"
        return (
            f"{status} suite={self.suite} geometry={self.geometry} trials={self.trials} "
            f"seed={self.seed} tol={self.tolerance:.3g} passes={self.passes} "
            f"failures={self.failures} generation_failures={self.generation_failures} "
            f"max_deviation={self.max_deviation:.6g} duration={self.duration:.2f}s"
        )


def run_suite(
    kind: str,
    g: Geometry,
    trials: int,
    seed: int,
    tolerance: float | None = None,
    degree: int = 3,
) -> SuiteReport:
    """Run `trials` independent seeded scenes of one suite.

    Trial i draws from the stream (seed, i), so the report is identical
    whether trials run serially or in parallel. Generation failures are
    counted as failed trials, distinct from predicate failures.
    """
    if kind not in SUITE_KINDS:
        raise ValueError(f"unknown suite kind {kind!r}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCES[kind]
    report = SuiteReport(
        suite=kind if kind != "carnot-n" else f"carnot-n{degree}",
        geometry=g.name,
        trials=trials,
        seed=int(seed),
        tolerance=float(tolerance),
    )
    start = time.perf_counter()
    for i in range(trials):
        rng = trial_rng(seed, i)
        try:
            _, dev, retries = sample_trial(g, kind, rng, degree=degree)
        except GenerationFailed:
            report.outcomes.append(
                TrialOutcome(i, float("nan"), passed=False, generation_failed=True)
            )
            continue
        report.outcomes.append(
            TrialOutcome(i, dev, passed=dev <= tolerance, retries=retries)
        )
    report.duration = time.perf_counter() - start
    return report


def write_report_csv(report: SuiteReport, path) -> None:
    """One row per trial plus a trailing summary row; 17 significant digits."""
    with open(path, "w") as fh:
        fh.write("suite,geometry,seed,trial,deviation,pass\n")
        for o in report.outcomes:
            dev = "nan" if o.generation_failed else format(o.deviation, ".17g")
            fh.write(
                f"{report.suite},{report.geometry},{report.seed},{o.index},{dev},"
                f"{'1' if o.passed else '0'}\n"
            )
        fh.write(
            f"{report.suite},{report.geometry},{report.seed},summary,"
            f"{format(report.max_deviation, '.17g')},{'1' if report.all_passed else '0'}\n"
        )
