import io
import re

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eulerfan.errors import DomainError, GridTooLarge
from eulerfan.model import witness_data, witness_law
from eulerfan.scanner import (
    COARSE_GRID, CSV_HEADER, DEFAULT_GRID, FAILS, HOLDS, MARGINAL, GridSpec, conjunction, point_masks,
    scan_region,
)
from eulerfan.verifier import Verdict



@pytest.fixture(scope="module")
def default_scan():
    return scan_region(witness_data(), witness_law())


@pytest.fixture(scope="module")
def coarse_scan():
    return scan_region(witness_data(), witness_law(), COARSE_GRID)


def test_point_examples(data, law):
    m = point_masks(2.142857, 1.45, data, law)
    assert m.a is Verdict.SATISFIED
    assert m.b in (Verdict.SATISFIED, Verdict.MARGINAL)
    assert m.c is Verdict.SATISFIED
    assert point_masks(2.142857, 1.47, data, law).a is Verdict.VIOLATED
    m = point_masks(1.0, 1.0, data, law)
    assert m.d is Verdict.VIOLATED and not m.domain_ok


def test_grid_validation():
    with pytest.raises(DomainError):
        GridSpec(1.0, 2.0, 0.0, 0.1, 1.0, 0.1)
    with pytest.raises(DomainError):
        GridSpec(2.0, 1.0, 0.1, 0.1, 1.0, 0.1)
    with pytest.raises(DomainError):
        GridSpec(1.0, 2.0, float("nan"), 0.1, 1.0, 0.1)
    with pytest.raises(GridTooLarge):
        GridSpec(1.0, 4.0, 1e-4, 0.01, 3.0, 1e-4)
    assert DEFAULT_GRID.shape == (600, 599)
    with pytest.raises(DomainError):
        scan_region(witness_data(), witness_law(), COARSE_GRID, tol=0)


def test_grid_parse():
    g = GridSpec.parse("1.001:3.999:0.005,0.01:3.0:0.005")
    assert g == DEFAULT_GRID
    for bad in ("1:2:0.1", "1:2,3:4:0.1", "a:b:c,d:e:f"):
        with pytest.raises(DomainError):
            GridSpec.parse(bad)


def test_determinism_across_workers(coarse_scan):
    data, law = witness_data(), witness_law()
    again = scan_region(data, law, COARSE_GRID, workers=3)
    assert again.to_csv() == coarse_scan.to_csv()
    assert scan_region(data, law, COARSE_GRID, workers=1).to_csv() == coarse_scan.to_csv()


def test_worker_env(monkeypatch, coarse_scan):
    monkeypatch.setenv("EULERFAN_WORKERS", "4")
    assert scan_region(witness_data(), witness_law(), COARSE_GRID).to_csv() == coarse_scan.to_csv()


def test_row_major_order(coarse_scan):
    rows = [coarse_scan[k] for k in (0, 1, coarse_scan.shape[1])]
    assert rows[0].rho1 == rows[1].rho1 and rows[1].delta2 > rows[0].delta2
    assert rows[2].rho1 > rows[0].rho1 and rows[2].delta2 == rows[0].delta2
    assert len(coarse_scan) == COARSE_GRID.size
    assert coarse_scan[-1] == coarse_scan[len(coarse_scan) - 1]


def test_conjunction_consistency(coarse_scan):
    for row in coarse_scan:
        parts = (row.a, row.b, row.c)
        if not row.domain_ok or Verdict.VIOLATED in parts:
            assert row.d is Verdict.VIOLATED
        elif all(p is Verdict.SATISFIED for p in parts):
            assert row.d is Verdict.SATISFIED
        else:
            assert row.d is Verdict.MARGINAL


codes = st.sampled_from([HOLDS, FAILS, MARGINAL])


@given(codes, codes, codes, st.booleans())
def test_conjunction_truth_table(a, b, c, inside):
    d = int(conjunction(a, b, c, inside))
    assert (d == HOLDS) == (a == b == c == HOLDS and inside)
    assert (d == FAILS) == (FAILS in (a, b, c) or not inside)


def test_default_scan_region(default_scan):
    assert (default_scan.d == HOLDS).sum() > 0
    col = default_scan.nearest_column(15 / 7)
    d2 = default_scan.delta2
    a = default_scan.a[col]
    assert np.all(a[d2 < 1.44] == HOLDS)
    assert np.all(a[d2 > 1.47] == FAILS)
    assert (a == MARGINAL).any()
    # once failing, stays failing: a is monotone in delta2
    first_fail = np.argmax(a == FAILS)
    assert np.all(a[first_fail:] == FAILS)


def test_apex_on_boundary(default_scan):
    i = default_scan.nearest_column(15 / 7)
    i0 = i if default_scan.rho1[i] < 15 / 7 else i - 1
    j0 = int(np.searchsorted(default_scan.delta2, 51 / 35)) - 1
    cell = (slice(i0, i0 + 2), slice(j0, j0 + 2))
    for mask in (default_scan.a, default_scan.b):
        assert (mask[cell] == HOLDS).any() and (mask[cell] != HOLDS).any()
    assert np.all(default_scan.c[i0 - 2:i0 + 4, j0 - 2:j0 + 4] == HOLDS)


def test_csv_format(coarse_scan):
    text = coarse_scan.to_csv()
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == len(coarse_scan) + 1
    num = r"-?\d\.\d{16}e[+-]\d{2}|nan"
    pat = re.compile(rf"^({num}),({num}),[10~],[10~],[10~],[10~],({num}),({num}),({num})$")
    for line in lines[1:200] + lines[-200:]:
        assert pat.match(line), line
    buf = io.StringIO()
    coarse_scan.write_csv(buf)
    assert buf.getvalue() == text
