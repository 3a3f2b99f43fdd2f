"""
The detsssp command
===================

Everything above is also available from the shell: generate a graph, solve
it, check a report independently, decompose, and benchmark.  Exit codes are
0 (ok), 1 (bad input), 2 (negative cycle found) and 3 (verification failed).
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "detsssp", *map(str, args)],
                          capture_output=True, text=True, check=False)
    print("$ detsssp", " ".join(map(str, args)), "->", proc.returncode)
    return proc


with tempfile.TemporaryDirectory() as tmp:
    gr = Path(tmp) / "g.gr"
    rep = Path(tmp) / "r.json"
    run("generate", "--kind", "uniform-random", "--n", 50, "--m", 200, "--lo", -8, "--hi", 8,
        "--hidden-potential", 8, "--seed", 1, "--out", gr)
    run("solve", gr, "--source", 0, "--out", rep)
    report = json.loads(rep.read_text())
    print("first distances:", report["distances"][:8])
    run("verify", gr, rep)

    # a wrong distance is caught
    report["distances"][3] = -999
    rep.write_text(json.dumps(report))
    print(run("verify", gr, rep).stderr.strip())

    out = run("decompose", gr, "--d", 100, "--epsilon", "1/11").stdout
    print("parts:", [len(p["vertices"]) for p in json.loads(out)["decomposition"]["parts"]])

    print(run("bench", "--sizes", "2^8,2^9").stdout)
