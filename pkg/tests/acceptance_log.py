"""One line per acceptance criterion, shown in the pytest terminal summary."""

RESULTS = []


def report(number, ok, detail):
    line = "criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
    RESULTS.append(line)
    print(line)
    return ok
