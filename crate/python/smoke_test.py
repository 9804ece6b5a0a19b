"""Smoke test for the algeo extension module.

Build and install first:
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/algeo-*.whl
"""

import json
from fractions import Fraction

import algeo


def main():
    m2 = algeo.Algebra.builtin("m2q")
    assert m2.dim == 4 and m2.field == "Q"
    unit = m2.unit()
    assert m2.mul(unit, [1, 2, 3, Fraction(1, 2)]) == ["1", "2", "3", "1/2"]

    qc = algeo.QuasiComplex(m2)
    assert qc.is_associative()
    assert qc.curvature().is_zero()
    assert qc.differential(algeo.Cochain.identity(m2)) == m2.mu()
    assert qc.coherence_order() == 2

    f = algeo.Cochain.random(m2, 1, seed=7)
    g = algeo.Cochain.random(m2, 0, seed=8)
    lhs = f.bracket(g)
    assert lhs == -(g.bracket(f))
    assert qc.square_formula_check(f)

    sl2 = algeo.Algebra.builtin("sl2")
    alpha = algeo.QuasiComplex(sl2).curvature()
    assert alpha.degree == 2 and alpha.arity == 3
    assert alpha.alt().is_zero()

    oct_ = algeo.QuasiComplex(algeo.Algebra.builtin("octonions"))
    assert not oct_.is_associative()
    assert oct_.coherence_order(4, 1) is None

    ta = algeo.TorsionAlgebra(m2)
    assert ta.function_dimension() == 4
    assert ta.is_regular()
    assert ta.torsion_tensor().is_zero()
    assert algeo.TorsionAlgebra(algeo.Algebra.builtin("zero3")).function_dimension() == 9

    again = algeo.Algebra.from_json(m2.to_json())
    assert again.basis_names == m2.basis_names

    report = json.loads(algeo.report("coherence", m2, trials=4))
    assert report["schema"] == 1
    assert report["checks"][0]["value"]["order"] == 2
    assert algeo.report("verify", sl2, trials=4) == algeo.report("verify", sl2, trials=4)

    try:
        algeo.Cochain.zero(m2, -2)
    except ValueError:
        pass
    else:
        raise AssertionError("degree -2 accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
