LINES: list[str] = []


def record(criterion: int, ok: bool, text: str):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {text}"
    LINES.append(line)
    print(line)
