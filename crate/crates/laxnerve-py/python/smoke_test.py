"""Smoke test for the laxnerve_py extension module.

Build the module first, either with `maturin develop` from crates/laxnerve-py or with

    cargo build -p laxnerve-py --release --features extension-module
    cp target/release/liblaxnerve_py.so crates/laxnerve-py/python/laxnerve_py.so

then run `python3 crates/laxnerve-py/python/smoke_test.py` from the workspace root.
"""

import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import laxnerve_py as ln  # noqa: E402

FIXTURES = HERE.parent.parent / "laxnerve" / "fixtures"


def main() -> None:
    e = ln.TwoCategory.walking_two_cell()
    assert e.validate() == [], e.validate()
    assert e.counts() == [2, 4, 8, 16, 32], e.counts()
    assert e.nerves_agree("diag", "geometric")
    assert e.homology() == ["Z", "0", "0", "0"]

    z3 = ln.TwoCategory.suspended_cyclic(3)
    assert z3.homology() == ["Z", "Z/3", "0", "Z/3"], z3.homology()

    under = e.fibre_under("0")
    assert under.homology() == ["Z", "0", "0", "0"]
    assert "TwoCategory(" in repr(under)

    loaded = ln.TwoCategory.from_file(str(FIXTURES / "walking_two_cell.tc"))
    assert loaded.canonical_text() == e.canonical_text()

    d = ln.Diagram.from_file(str(FIXTURES / "cyclic2_self_action.2d"))
    assert d.validate() == []
    assert d.thomason("ii", 3) == []
    total = d.grothendieck()
    assert total.validate() == []

    try:
        ln.TwoCategory.from_text("format 1\nkind twocat\ncell1 u : 0 -> 1\n")
    except ValueError as err:
        assert "BoundaryMismatch" in str(err), err
    else:
        raise AssertionError("dangling 1-cell was accepted")

    code, out, _ = ln.run_cli(["compare", "--a", "dnerve:" + str(FIXTURES / "walking_two_cell.tc"),
                               "--b", "gnerve:" + str(FIXTURES / "walking_two_cell.tc")])
    assert code == 0 and "OK agree through degree 3" in out, out

    print("laxnerve_py smoke test passed")


if __name__ == "__main__":
    main()
