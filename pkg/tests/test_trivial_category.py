"""The rank-1 trivial category is a legal input on every pathway."""

from mfclib.catalog import pointed_cyclic
from mfclib.characters import (trivial_double_table, vacuum_dimension_table,
                               verify_ortho1, verify_ortho2,
                               verify_trace_formula)
from mfclib.context_fixtures import trivial_context
from mfclib.cyclotomic import rational
from mfclib.invariants import commutant_basis, enumerate_invariants
from mfclib.modular_data import derived, validate, verlinde_fusion
from mfclib.morita import exponents_check, verify_context
from mfclib.obstruction import (check_obstruction, double_z,
                                series_coefficients, trace_identities)
from mfclib.serialize import decode, encode


def test_trivial_category_everywhere():
    md = pointed_cyclic(1, 0)
    assert validate(md).passed
    assert derived(md).global_dim == rational(1)
    assert verlinde_fusion(md).axiom_failures() == []
    assert commutant_basis(md).dimension == 1

    invs = enumerate_invariants(md)
    assert len(invs) == 1 and invs[0].entries.tolist() == [[1]]
    assert check_obstruction(md, invs, 3).verdict
    coeffs = series_coefficients(md, invs[0], 3)
    assert [c.as_fraction() for c in coeffs] == [1, 1, 1, 1]
    t = trace_identities(md, invs[0])
    assert (t.tr_z, t.tr_zzt) == (1, 1)
    assert double_z(md, invs[0], invs[0]).mu_trace == 1

    ctx = trivial_context(md)
    assert verify_context(ctx).passed
    assert exponents_check(ctx).passed
    chi = vacuum_dimension_table(md, ctx)
    assert verify_ortho1(md, ctx, chi, 0).passed
    assert verify_ortho2(md, ctx, chi, 0, 0).passed
    assert verify_trace_formula(md, ctx, trivial_double_table(md, ctx)).passed
    assert decode(encode(md)) == md
    assert decode(encode(ctx)) == ctx
