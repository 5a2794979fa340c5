from typing import Optional

from lib.Utils import Utils
from models.Errors import AmbiguousChirality, TphwError
from models.Reports import CheckResult, ValidationReport
from models.Weave import WeaveSpec
from services.AppData import AppData
from services.CrossingAnalysis import CrossingAnalysis
from services.HelixModel import HelixModel
from services.logger.Logger import _log

CLEARANCE_FLOOR_FACTOR = 1e-3


class Validation:
    """
    Runs every structural check on a weave and collects them in one report.

    Checks: counts, periodicity, clearance, crossings, chirality and, for
    Laves weaves with trigonal crossings, the Laves topology of each network.
    """

    def __init__(self, grid_n: Optional[int] = None, gap_tol: Optional[float] = None, max_workers: Optional[int] = None):
        self.app_data = AppData()
        self.gap_tol = gap_tol
        self.analysis = CrossingAnalysis(grid_n=grid_n, max_workers=max_workers)
        self.proximity = self.analysis.proximity

    @staticmethod
    def check_counts(w: WeaveSpec) -> CheckResult:
        expected, actual = w.expected.helices_per_unit, len(w.helices)
        return CheckResult(passed=expected == actual, details={"expected": expected, "actual": actual})

    @staticmethod
    def check_periodicity(w: WeaveSpec) -> CheckResult:
        try:
            turns = [HelixModel.turns_per_repeat(h, w.lattice) for h in w.helices]
            canonical = [HelixModel.canonicalize(h, w.lattice) for h in w.helices]
        except TphwError as e:
            return CheckResult(passed=False, details={"error": str(e)})
        duplicates = [
            [i, j] for i in range(len(canonical)) for j in range(i + 1, len(canonical)) if canonical[i].matches(canonical[j])
        ]
        return CheckResult(passed=not duplicates, details={"turns": turns, "duplicates": duplicates})

    def check_clearance(self, w: WeaveSpec):
        floor = CLEARANCE_FLOOR_FACTOR * w.lattice.period
        report = self.proximity.clearance(w, gap_tol=self.gap_tol)
        result = CheckResult(
            passed=report.min_gap >= floor,
            details={
                "min_gap": report.min_gap,
                "min_distance": report.min_distance,
                "pair": list(report.pair),
                "translation": list(report.witness.translation),
                "floor": floor,
                "contacts": len(report.contacts),
            },
        )
        return result, report

    def validate(self, w: WeaveSpec, seed: Optional[int] = None) -> ValidationReport:
        """
        Args:
            w (WeaveSpec): A constructed weave.
            seed (int | None): Optimizer seed to record when the weave came out of a search.

        Returns:
            ValidationReport: PASS iff every applicable check passes.
        """
        checks = {"counts": self.check_counts(w), "periodicity": self.check_periodicity(w)}
        checks["clearance"], clearance = self.check_clearance(w)

        radius = self.analysis.cluster_radius_factor * w.lattice.period
        clusters = self.analysis.cluster_crossings(list(clearance.contacts), w.lattice, radius)
        classification = self.analysis.classify_clusters(w, clusters)
        checks["crossings"] = CheckResult(
            passed=classification.passed,
            details={
                "histogram": [[label, count] for label, count in classification.histogram.items()],
                "expected_participants": list(w.expected.helices_per_crossing),
                "crossing_types": list(classification.crossing_names),
            },
        )

        contact_graph = self.analysis.contact_graph_from_clusters(w, clusters)
        try:
            census = self.analysis.chirality_census(w, contact_graph)
            checks["chirality"] = CheckResult(
                passed=census.chirality == w.expected.chirality_class,
                details={
                    "expected": w.expected.chirality_class.value,
                    "actual": census.chirality.value,
                    "right": census.right,
                    "left": census.left,
                    "components": [list(c) for c in census.components],
                },
            )
        except AmbiguousChirality as e:
            checks["chirality"] = CheckResult(passed=False, details={"expected": w.expected.chirality_class.value, "error": str(e)})

        checks["laves"] = self._check_laves(w, clusters, contact_graph)

        report = ValidationReport(name=w.name, checks=checks, seed=seed)
        _log(f"Validated '{w.name}': {'PASS' if report.passed else 'FAIL'}", {k: c.passed for k, c in checks.items() if c.applicable}, level="INFO")
        return report

    def _check_laves(self, w: WeaveSpec, clusters, contact_graph) -> CheckResult:
        """
        Laves topology of each network's crossings, for Laves weaves with trigonal crossings.

        The networks are the components of the helix contact graph. Trefoil, braid and pair
        crossings do not sit on the net's vertices, so those rows are not checked.
        """
        if "laves" not in w.name.lower() or "trigonal" not in w.expected.crossing_type_names:
            return CheckResult(passed=True, applicable=False)
        results = []
        for network in self.analysis.network_clusters(clusters, contact_graph):
            if not network:
                results.append(False)
                continue
            graph = self.analysis.crossing_graph_from_clusters(w, network)
            results.append(self.analysis.laves_check(graph))
        return CheckResult(passed=bool(results) and all(results), details={"networks": len(results), "per_network": results})

    # --------------------------
    # Output
    # --------------------------

    @staticmethod
    def report_document(report: ValidationReport) -> dict:
        checks = {}
        for name, check in report.checks.items():
            entry = dict(check.details)
            entry["pass"] = check.passed
            if not check.applicable:
                entry["applicable"] = False
            checks[name] = entry
        doc = {"name": report.name, "pass": report.passed, "checks": checks}
        if report.seed is not None:
            doc["seed"] = report.seed
        return doc

    @staticmethod
    def report_json(report: ValidationReport) -> str:
        return Utils.dumps17(Validation.report_document(report)) + "\n"

    @staticmethod
    def report_text(report: ValidationReport) -> str:
        lines = [f"{report.name}: {'PASS' if report.passed else 'FAIL'}"]
        for name, check in report.checks.items():
            status = "n/a " if not check.applicable else ("PASS" if check.passed else "FAIL")
            detail = Utils.flatten_json_to_string(check.details) if check.details else ""
            lines.append(f"  [{status}] {name:<12} {detail}".rstrip())
        return "\n".join(lines)
