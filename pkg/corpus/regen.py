"""Regenerate the golden outputs: ``python3 corpus/regen.py``.

Each command runs with ``--json --no-timing`` from inside ``corpus/``.
"""

import contextlib
import io
import json
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))


def run(argv):
    from bgrlab.cli import main

    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv) + ["--json", "--no-timing"])
    return code, out.getvalue()


def main():
    os.chdir(HERE)
    with open("commands.json", encoding="utf-8") as fh:
        commands = json.load(fh)
    for cmd in commands:
        code, text = run(cmd["argv"])
        if code != cmd["exit"]:
            print(f"{cmd['name']}: exit {code}, expected {cmd['exit']}", file=sys.stderr)
        with open(os.path.join("golden", cmd["name"] + ".json"), "w", encoding="utf-8") as fh:
            fh.write(text)
    print(f"wrote {len(commands)} golden files")


if __name__ == "__main__":
    main()
