"""Prints one pass/fail line per acceptance criterion after the run."""

ACCEPTANCE = {
    "test_01_example_coefficients": "1 example regression: expansion coefficients (rel <= 1e-12, n <= 12)",
    "test_02_example_levels": "2 example regression: control levels (rel <= 1e-6, extended precision)",
    "test_03_transform_identities": "3 transform identities: exponential image, involution, basis exchange",
    "test_04_deviation_bound": "4 mollification deviation bound dominates measured L2 distance",
    "test_05_moment_identity": "5 moment identity: 2-D quadrature vs 1-D closed form (rel <= 1e-4)",
    "test_06_necessary_condition": "6 necessary reachability condition with constant L/(2 pi)",
    "test_07_entire_bound": "7 entire-extension growth bound on a complex grid",
    "test_08_heat_evolution": "8 free heat evolution: worked example and Gaussian law vs 2-D quadrature",
    "test_09_residual_within_budget": "9 synthesis residual within analytic budget and decreasing",
    "test_10_solution_bound": "10 controlled-term solution growth bound on a t-grid",
}

_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if name in ACCEPTANCE and report.when == "call":
        _results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, desc in ACCEPTANCE.items():
        status = _results.get(name, "NOT RUN")
        terminalreporter.write_line(f"[{status}] criterion {desc}")
