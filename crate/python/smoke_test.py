"""Smoke test for the Python bindings.

Install the extension first, either as a wheel

    pip install maturin
    (cd crates/py && maturin build --release -o dist) && pip install crates/py/dist/*.whl

or by copying the shared library next to this script

    cargo build --release -p maclane-py --features extension-module
    cp target/release/libmaclane.so python/maclane.so

then run `python3 python/smoke_test.py`.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import maclane  # noqa: E402


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok: {what}")


v = maclane.vf("padic:3", "x^3-9")
check(v.literal == "[v0, (x)=2/3]", "v_f of x^3-9 over Q_3")
check(v.evaluate("x^3-9") == "2", "value of x^3-9")
check(maclane.eval_at_root("padic:3", "x^3-9", "x") == "2/3", "value of x at a root")

check(maclane.shortest_npath("1", "3/8") == ["1", "1/2", "2/5", "3/8"], "shortest 1-path 1 -> 3/8")
check(maclane.successor_precursor("3/8", 1, "0", "1") == ("1/3", "2/5"), "successor and precursor of 3/8")

q = maclane.vf("padic:3", "x^4-6*x^2-36*x-18")
check(q.lambdas() == ["1/2", "5/4"] and q.keys() == ["x", "x^2 - 3"], "quartic v_f")
vp, vpp = q.neighbours()
check((vp.literal, vpp.literal) == ("[v0, (x)=1/2]", "[v0, (x)=1/2, (x^2-3)=3/2]"), "successor and precursor valuations")

full = q.resolve(with_origin=True)
check(sorted(full.multiplicities) == [1, 1, 2, 2, 4], "full resolution multiplicities")
check(len(full.edges) == len(full) - 1, "dual graph is a tree")
check(full.to_dot().startswith("graph"), "DOT output")

r = maclane.embedded("padic:3", "x^4-6*x^2-36*x-18")
check((r.e_prime, r.e_dprime, r.chosen) == (2, 2, "PRIME"), "embedded resolution summary")
check(sorted(w.literal for w in r.model.vertices) == ["[v0, (x)=1/2]", "[v0, (x)=1]", "[v0]"], "embedded model")
check(json.loads(r.json)["chosen"] == "PRIME", "embedded JSON")

for w in full.vertices:
    back = maclane.Valuation.from_json(w.base, w.to_json())
    check(back.compare(w) == "EQUAL" and back == w, f"JSON round trip of {w}")

t, regular = maclane.classify("padic:3", "x^3-9", [maclane.Valuation.gauss("padic:3"), maclane.Valuation("padic:3", "[v0, (x)=1]")])
check((t, regular) == ("TYPE_I", True), "classification")

comp, node = maclane.specialize_root("padic:3", "x^3-9", [maclane.Valuation.gauss("padic:3"), maclane.Valuation("padic:3", "[v0, (x)=1]")])
check(comp.literal == "[v0]" and node is not None and node.literal == "[v0, (x)=1]", "specialization")

w = maclane.Valuation("laurent:2^2", "[v0, (x)=1/2]")
check(w.ramification_index() == 2 and w.is_key("x^2+t"), "Laurent backend")

try:
    maclane.vf("padic:2", "x^2+x+1")
except maclane.MaclaneError as e:
    check(str(e).startswith("UnramifiedExtensionRequired(2)"), "error name in exception")
else:
    raise SystemExit("FAIL: expected MaclaneError")

try:
    v.compare(w)
except maclane.MaclaneError as e:
    check(str(e).startswith("BaseMismatch"), "base mismatch")
else:
    raise SystemExit("FAIL: expected a base mismatch")

print("smoke test passed")
