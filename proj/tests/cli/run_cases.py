"""Runs the CLI against tests/cli/cases.json and compares exit codes and output."""
import json
import subprocess
import sys


def main() -> int:
    exe, cases_path, data_dir = sys.argv[1:4]
    only = sys.argv[4] if len(sys.argv) > 4 else None
    with open(cases_path, encoding="utf-8") as f:
        cases = json.load(f)
    failed = 0
    ran = 0
    for case in cases:
        if only and case["name"] != only:
            continue
        ran += 1
        args = [a.replace("@DATA@", data_dir) for a in case["args"]]
        p = subprocess.run([exe, *args], capture_output=True, text=True, timeout=120)
        problems = []
        if p.returncode != case["exit"]:
            problems.append(f"exit {p.returncode}, want {case['exit']}")
        if "stdout" in case and p.stdout != case["stdout"]:
            problems.append(f"stdout {p.stdout!r}, want {case['stdout']!r}")
        if "contains" in case and case["contains"] not in p.stdout:
            problems.append(f"stdout lacks {case['contains']!r}: {p.stdout!r}")
        if "stderr_contains" in case and case["stderr_contains"] not in p.stderr:
            problems.append(f"stderr lacks {case['stderr_contains']!r}: {p.stderr!r}")
        status = "FAIL" if problems else "ok"
        print(f"{status:4} {case['name']}")
        for msg in problems:
            print(f"     {msg}")
        failed += bool(problems)
    if ran == 0:
        print(f"no case named {only}")
        return 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
