"""Run the acceptance suite and print one PASS/FAIL line per criterion."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def main():
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-s", "-p", "no:cacheprovider", str(ROOT / "tests" / "test_acceptance.py")],
        capture_output=True, text=True, cwd=ROOT,
    )
    lines = [l for l in proc.stdout.splitlines() if l.startswith("ACCEPTANCE")]
    print("\n".join(lines) if lines else proc.stdout)
    passed = sum(" PASS " in l for l in lines)
    print(f"{passed}/{len(lines)} criteria pass")
    return 0 if passed == len(lines) == 10 else 1


if __name__ == "__main__":
    sys.exit(main())
