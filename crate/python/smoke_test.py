"""Smoke test for the bggkit extension module.

Build with `maturin develop -m crates/py/Cargo.toml` or copy
`target/release/libbggkit.so` to `bggkit.so` on the import path.
"""

import bggkit


def main():
    k = bggkit.Module.simple("exterior", 2)
    table = k.cohomology(-3, 3, 0, 1)
    assert table[(0, 1)] == 2, table
    assert table[(1, -2)] == 1, table
    assert (0, -1) not in table

    k3 = bggkit.Module.simple("exterior", 3)
    verdict, _ = k3.theorem15()
    assert verdict == "verified"
    assert k3.is_nice() and k3.rank() == 1

    s, round_trip = k3.koszul_dual(4)
    assert s.kind == "symmetric"
    assert [s.dims()[j] for j in range(5)] == [1, 3, 6, 10, 15]
    assert round_trip

    j = bggkit.Module.builtin("radical:1", 3)
    again = bggkit.Module.from_json(j.to_json())
    assert again.dims() == j.dims()
    assert j.betti(3)[(0, 0)] == 3

    lhs, rhs = bggkit.serre_check(k3, j, 1)
    assert lhs == rhs
    assert bggkit.ar_vanishing(k3, bggkit.Module.twist(3, 1), 2) == [0, 0]

    passed, skipped, failures = bggkit.sweep("lemma14", seed=1, count=10)
    assert passed + skipped == 10 and not failures

    try:
        bggkit.Module.from_json('{"algebra": {"kind": "exterior", "nvars": 2}}')
    except bggkit.BggkitError as e:
        assert "parse" in str(e)
    else:
        raise AssertionError("malformed module accepted")

    print("bggkit smoke test ok")


if __name__ == "__main__":
    main()
