#!/usr/bin/env python3
"""Smoke test for the strata_py extension module.

Builds the cdylib with cargo, exposes it as an importable module, and
exercises the main surface: signatures, models, satisfaction, entailment,
filtered products, and a verification suite.

Run from the repository root:  python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module(tmp: pathlib.Path) -> None:
    subprocess.run(
        ["cargo", "build", "-p", "strata-py"], cwd=ROOT, check=True
    )
    for name in ("libstrata_py.so", "libstrata_py.dylib", "strata_py.dll"):
        built = ROOT / "target" / "debug" / name
        if built.exists():
            shutil.copy(built, tmp / "strata_py.so")
            return
    raise FileNotFoundError("built strata_py library not found in target/debug")


def main() -> None:
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="strata_py_"))
    build_module(tmp)
    sys.path.insert(0, str(tmp))
    import strata_py

    logics = strata_py.logics()
    assert len(logics) == 13 and "mpl" in logics and "hmofol" in logics, logics

    caps = strata_py.logic_capabilities("hpl")
    assert caps["at"] and caps["nominal"] and not caps["forall_var"], caps

    sig = strata_py.Signature("mpl", json.dumps({"props": ["p", "q"]}))
    assert sig.logic == "mpl"

    rendered = strata_py.parse(sig, "p & !q -> <>q")
    assert rendered == "((p & (! q)) -> (<> q))", rendered

    model_json = json.dumps(
        {
            "Kripke": {
                "frame": {
                    "worlds": ["0", "1"],
                    "relations": {"lambda": [["0", "1"]]},
                    "nominal_interp": {},
                },
                "assignment": {"0": {"Props": []}, "1": {"Props": ["p"]}},
            }
        }
    )
    m = strata_py.Model(sig, model_json)
    assert m.states() == ["0", "1"]
    assert m.check("<>p", "0") is True
    assert m.check("<>p", "1") is False
    assert m.check_global("!q") is True
    assert json.loads(m.to_json())["Kripke"]["frame"]["worlds"] == ["0", "1"]

    # Modus ponens holds locally; necessitation-style lifting does not.
    assert strata_py.entail(sig, "local", ["p", "p -> q"], "q") is None
    counter = strata_py.entail(sig, "local", ["p"], "[]p")
    assert counter is not None
    counter_model, counter_state = counter
    assert counter_state is not None and "Kripke" in counter_model

    # A filtered product of the model with itself keeps the reachability
    # pattern: p is possible at the paired initial world.
    prod = strata_py.product(sig, "{1,2}", [m, m])
    assert prod.check("<>p", "(0,0)") is True
    assert len(prod.states()) == 4

    report = strata_py.run_suite("laws", "hpl", seed=1, budget=5)
    assert report["violations"] == [], report["violations"]
    assert report["checks"] > 0

    print("smoke test passed:", len(logics), "logics,", report["checks"], "law checks")


if __name__ == "__main__":
    main()
