def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or next(
        (m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None
    )
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, ok, elapsed, limit = results[n]
        tag = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{tag}] criterion {n}: {title} ({elapsed:.2f}s, limit {limit:g}s)")
    missing = sorted(set(range(1, 9)) - set(results))
    for n in missing:
        terminalreporter.write_line(f"[FAIL] criterion {n}: not run")
