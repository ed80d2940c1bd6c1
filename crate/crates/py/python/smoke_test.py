"""Smoke test for the Python bindings.

Build and install first:

    cd crates/py && maturin develop --release   # or: pip install . --no-build-isolation
    python python/smoke_test.py
"""

import json

import pivotal_workbench as pw


def main():
    assert set(pw.bundled_names()) == {"kc2_f5", "kc3_f7", "sweedler_f5", "taft3_f7", "s3_f7"}

    h = pw.HopfAlgebra.bundled("sweedler_f5")
    assert (h.dim, h.modulus) == (4, 5)
    assert all(ok for _, ok in h.check_axioms())
    assert len(h.group_likes()) == 2
    assert len(h.characters()) == 2
    labels = sorted(label for label, _, _ in h.pairs_in_involution())
    assert labels == ["(beta(1:1,g:4,x:0,gx:0), 1)", "(eps, g)"], labels
    assert h.pairs_match_isomorphisms()

    d = h.drinfeld_double()
    assert (d.kind, d.dim) == ("drinfeld", 16)
    unit = d.unit()
    e5 = [0] * 16
    e5[5] = 1
    assert d.mul(unit, e5) == e5
    assert json.loads(d.to_json())["dim"] == 16
    assert h.anti_double().kind == "anti"

    rho, ident = pw.Diagram.rho(), pw.Diagram.identity(1)
    assert rho @ rho == ident
    loop = pw.Diagram.ev() @ pw.Diagram.coev()
    assert loop.loops == (1, 0)
    assert pw.Diagram(str(rho)) == rho
    assert pw.Diagram.ev().dual() == pw.Diagram.coev()

    assert len(pw.half_braidings(1)) == 4
    assert len(pw.half_braidings(3)) == 40
    for name in ("lift_id", "lift_rho", "zeta"):
        ok, witness = pw.verify_pivotal(name, 3)
        assert ok and witness is None, (name, witness)
    ok, witness = pw.verify_pivotal("signature_only", 2)
    assert not ok and witness.startswith("naturality")
    assert pw.zeta_not_induced(3)

    code, out, _ = pw.run_cli(["iso", "taft3_f7"])
    assert code == 0 and json.loads(out)["findings"]["sets_agree"]
    code, _, err = pw.run_cli(["hopf-check", "missing"])
    assert code == 2 and err

    try:
        pw.HopfAlgebra.bundled("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown name accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
