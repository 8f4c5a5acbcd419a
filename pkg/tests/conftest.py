import re

CRITERIA = {
    1: "connection tables",
    2: "curvature tensor tables",
    3: "sectional, Ricci and scalar curvature",
    4: "Douglas / Berwald classification",
    5: "geodesic systems and claimed components",
    6: "S-curvature numerators",
    7: "property suite against the index-level oracle",
    8: "geodesic completeness scan",
    9: "CLI verify exit status and determinism",
}

_CRITERION = re.compile(r"test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    results = {}
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if not m:
                continue
            n = int(m.group(1))
            results[n] = results.get(n, True) and status == "passed"
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(results):
        verdict = "PASS" if results[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict}  {CRITERIA.get(n, '')}")
