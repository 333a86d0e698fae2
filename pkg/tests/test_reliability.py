from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dispersia import (
    Band,
    CodedSet,
    ConfusionMatrix,
    DegenerateAgreement,
    DuplicateId,
    IdSetMismatch,
    ParseError,
    build_confusion,
    cohen_kappa,
    landis_koch_band,
)
from dispersia.reliability import agreement_terms, disagreements, parse_coder_csv


def coded_pair(cells, labels=("X", "Y")):
    """Two coded sets whose cross-tabulation is exactly ``cells``."""
    a, b = {}, {}
    k = 0
    for i, row in enumerate(cells):
        for j, n in enumerate(row):
            for _ in range(n):
                a[f"id{k:03d}"] = labels[i]
                b[f"id{k:03d}"] = labels[j]
                k += 1
    return CodedSet(a, "A"), CodedSet(b, "B")


def kappa_oracle(cells):
    """Textbook kappa in floats from the marginals."""
    total = sum(map(sum, cells))
    k = len(cells)
    p_o = sum(cells[i][i] for i in range(k)) / total
    rows = [sum(cells[i]) / total for i in range(k)]
    cols = [sum(cells[i][j] for i in range(k)) / total for j in range(k)]
    p_e = sum(r * c for r, c in zip(rows, cols))
    return (p_o - p_e) / (1 - p_e)


class TestConfusion:
    def test_perfect_agreement(self):
        a = CodedSet({"p1": "X", "p2": "Y"})
        m = build_confusion(a, CodedSet({"p1": "X", "p2": "Y"}))
        assert m.labels == ("X", "Y")
        assert m.cells == ((1, 0), (0, 1))

    def test_id_mismatch(self):
        with pytest.raises(IdSetMismatch) as err:
            build_confusion(CodedSet({"p1": "X", "p2": "X"}), CodedSet({"p1": "X", "p3": "X"}))
        assert err.value.symmetric_difference == {"p2", "p3"}
        assert err.value.only_a == ("p2",) and err.value.only_b == ("p3",)

    def test_constructed_cells(self):
        a, b = coded_pair([[20, 5], [10, 15]])
        m = build_confusion(a, b)
        assert m.cells == ((20, 5), (10, 15))
        assert m.total == 50

    def test_labels_sorted_union(self):
        m = build_confusion(CodedSet({"1": "b", "2": "c"}), CodedSet({"1": "a", "2": "c"}))
        assert m.labels == ("a", "b", "c")
        assert m.cells == ((0, 0, 0), (1, 0, 0), (0, 0, 1))

    @pytest.mark.parametrize(
        "labels, cells",
        [(("a",), ((0,),)), (("a", "b"), ((1, 0),)), (("a", "a"), ((1, 0), (0, 1))), (("a",), ((-1,),))],
    )
    def test_invalid_matrix(self, labels, cells):
        with pytest.raises(ValueError):
            ConfusionMatrix(labels, cells)


class TestKappa:
    def test_hand_example(self):
        # marginals rows (25, 25), cols (30, 20): p_e = (25*30 + 25*20) / 50**2 = 0.5
        m = ConfusionMatrix.from_rows([[20, 5], [10, 15]])
        p_o, p_e = agreement_terms(m)
        assert (p_o, p_e) == (Fraction(7, 10), Fraction(1, 2))
        r = cohen_kappa(m)
        assert r.observed_agreement == 0.7
        assert r.expected_agreement == 0.5
        assert r.kappa == 0.4
        assert r.band is Band.FAIR
        assert r.n_items == 50

    @pytest.mark.parametrize("k", [1, 2, 3, 6])
    def test_identity(self, k):
        if k == 1:
            with pytest.raises(DegenerateAgreement):
                cohen_kappa(ConfusionMatrix.from_rows([[3]]))
            return
        r = cohen_kappa(ConfusionMatrix.from_rows([[int(i == j) for j in range(k)] for i in range(k)]))
        assert r.kappa == 1.0
        assert r.band is Band.ALMOST_PERFECT

    def test_degenerate(self):
        with pytest.raises(DegenerateAgreement):
            cohen_kappa(ConfusionMatrix.from_rows([[10, 0], [0, 0]]))

    def test_worse_than_chance(self):
        r = cohen_kappa(ConfusionMatrix.from_rows([[0, 5], [5, 0]]))
        assert r.kappa == -1.0
        assert r.band is Band.POOR


class TestBands:
    @pytest.mark.parametrize(
        "kappa, band",
        [
            (0.87, Band.ALMOST_PERFECT),
            (1.0, Band.ALMOST_PERFECT),
            (-0.1, Band.POOR),
            (0.0, Band.SLIGHT),
            (0.2, Band.SLIGHT),
            (0.21, Band.FAIR),
            (0.4, Band.FAIR),
            (0.6, Band.MODERATE),
            (0.8, Band.SUBSTANTIAL),
            (0.81, Band.ALMOST_PERFECT),
            (Fraction(2, 5), Band.FAIR),
        ],
    )
    def test_cuts(self, kappa, band):
        assert landis_koch_band(kappa) is band

    def test_above_one(self):
        with pytest.raises(ValueError):
            landis_koch_band(1.01)


matrices = st.integers(min_value=2, max_value=5).flatmap(
    lambda k: st.lists(
        st.lists(st.integers(min_value=0, max_value=30), min_size=k, max_size=k), min_size=k, max_size=k
    )
)


def _usable(cells):
    total = sum(map(sum, cells))
    if total == 0:
        return False
    return agreement_terms(ConfusionMatrix.from_rows(cells))[1] < 1


@settings(max_examples=300, deadline=None)
@given(matrices.filter(_usable))
def test_kappa_properties(cells):
    m = ConfusionMatrix.from_rows(cells)
    r = cohen_kappa(m)
    assert 0 <= r.observed_agreement <= 1
    assert 0 <= r.expected_agreement < 1
    assert r.kappa <= 1
    assert r.kappa == pytest.approx(kappa_oracle(cells), abs=1e-12)
    # swapping coders transposes the matrix
    assert cohen_kappa(m.transpose()).kappa == r.kappa
    diagonal = all(cells[i][j] == 0 for i in range(len(cells)) for j in range(len(cells)) if i != j)
    assert (r.kappa == 1) == diagonal


@settings(max_examples=200, deadline=None)
@given(matrices.filter(_usable), st.randoms(use_true_random=False))
def test_consistent_relabel(cells, rng):
    k = len(cells)
    perm = list(range(k))
    rng.shuffle(perm)
    relabelled = [[cells[perm[i]][perm[j]] for j in range(k)] for i in range(k)]
    a = cohen_kappa(ConfusionMatrix.from_rows(cells)).kappa
    assert cohen_kappa(ConfusionMatrix.from_rows(relabelled)).kappa == a


class TestCoderFiles:
    def test_parse(self):
        s = parse_coder_csv(b"id,category\np1,X\np2,Y\n", "alice")
        assert s.assignments == {"p1": "X", "p2": "Y"}
        assert s.coder_name == "alice"

    def test_duplicate(self):
        with pytest.raises(DuplicateId):
            parse_coder_csv("id,category\np1,X\np1,Y\n")

    @pytest.mark.parametrize("text", ["id,label\np1,X\n", "id,category\n", "id,category\np1,\n"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_coder_csv(text)

    def test_disagreements(self):
        a, b = coded_pair([[20, 5], [10, 15]])
        diffs = disagreements(a, b)
        assert len(diffs) == 15
        assert all(la != lb for _, la, lb in diffs)
        assert [d[0] for d in diffs] == sorted(d[0] for d in diffs)
