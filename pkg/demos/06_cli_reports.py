# coding: utf-8

# # JSON reports from the command line
#
# The same analyses through ``irrseries``.  Each run prints one report with
# exact string values, the verdict and every assumption it rests on.

# %%

import json
import subprocess
import sys
from pathlib import Path

specs = Path(__file__).resolve().parent / "specs"


def run(*args):
    argv = [str(specs / a) if a.endswith(".json") else a for a in args]
    out = subprocess.run([sys.executable, "-m", "irrseries.cli", *argv],
                         capture_output=True, text=True, check=False)
    return out.returncode, json.loads(out.stdout) if out.stdout else out.stderr


# %%

code, doc = run("eval", "liouville.json", "--depth", "4")
print(code, doc["values"]["decimal"])
print(doc["assumed_facts"])

# %%

code, doc = run("check", "erdos-straus", "telescoping.json", "--Bmax", "4")
print(doc["verdict"], doc["values"]["search"]["witness"]["c"][:5])

# %%
# Verdicts are data: a refutation still exits with 0.

code, doc = run("check", "hancl-cor2", "double_exp.json", "--A", "2")
print(code, doc["verdict"])

# %%
# Input problems exit with 1 and say what was wrong.

print(run("check", "hancl", "telescoping.json", "--A", "2"))
