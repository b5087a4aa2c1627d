"""Shared registry of acceptance outcomes, printed by the terminal-summary hook."""

RESULTS: dict[int, tuple[bool, str, str]] = {}


def record(key: int, label: str, ok: bool, detail: str) -> None:
    RESULTS[key] = (bool(ok), label, detail)
    print(f"[{'PASS' if ok else 'FAIL'}] C{key} {label}: {detail}")
