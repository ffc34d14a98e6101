import re

_CRITERIA = {
    1: "fidelity table reproduction",
    2: "oracle equivalence",
    3: "cat-state analytics",
    4: "nonclassical volume",
    5: "wigner invariant suite",
    6: "tomogram cross-validation",
    7: "special-function suite",
    8: "parity suppression",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance criterion."""
    outcomes = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            match = re.search(r"test_acceptance\.py::test_criterion_(\d+)", rep.nodeid)
            if match:
                outcomes.setdefault(int(match.group(1)), []).append(key == "passed")
    if not outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(outcomes):
        verdict = "PASS" if all(outcomes[num]) else "FAIL"
        name = _CRITERIA.get(num, "?")
        terminalreporter.write_line(f"criterion {num} ({name}): {verdict}")
