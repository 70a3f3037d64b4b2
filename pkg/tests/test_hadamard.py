import io

import numpy as np
import pytest

from hadsearch import constructions as cons
from hadsearch import hadamard as hm
from hadsearch.solver import exhaustive_min


def ground_blocks(k):
    sset = exhaustive_min(cons.williamson_energy(k), all_ground=False)
    rows = cons.williamson_first_rows(k, list(sset.best().values))
    return [hm.circulant(r) for r in rows]


class TestCirculant:
    def test_single_entry(self):
        assert hm.circulant([1]).tolist() == [[1]]

    def test_right_shift(self):
        C = hm.circulant([1, -1, -1])
        assert C[1].tolist() == [-1, 1, -1]
        assert C[2].tolist() == [-1, -1, 1]

    def test_symmetric_first_row_gives_symmetric_block(self):
        A = hm.circulant([1, -1, -1])
        assert np.array_equal(A, A.T)

    def test_periodic_autocorrelation_determines_gram(self):
        # C^T C entries depend only on the periodic autocorrelation of the row
        row = [1, -1, 1, 1, -1]
        C = hm.circulant(row)
        G = C.T @ C
        n = len(row)
        paf = [sum(row[t] * row[(t + r) % n] for t in range(n)) for r in range(n)]
        for i in range(n):
            for j in range(n):
                assert G[i, j] == paf[(i - j) % n]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            hm.circulant([])


class TestBackDiagonal:
    def test_order_one(self):
        assert hm.back_diagonal(1).tolist() == [[1]]

    def test_anti_diagonal_structure(self):
        R = hm.back_diagonal(3)
        assert R.tolist() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]

    def test_involution(self):
        R = hm.back_diagonal(5)
        assert np.array_equal(R @ R, np.eye(5, dtype=np.int64))


class TestWilliamsonArray:
    def test_unit_blocks(self):
        one = np.array([[1]])
        H = hm.williamson_array(one, one, one, one)
        ok, _ = hm.verify(H)
        assert ok and H.shape == (4, 4)

    def test_solved_blocks_give_order_12(self):
        H = hm.williamson_array(*ground_blocks(3))
        ok, D = hm.verify(H)
        assert ok
        assert H.shape == (12, 12)
        assert np.array_equal(D, 12 * np.eye(12, dtype=np.int64))

    def test_invalid_blocks_fail_verification(self):
        ones = np.ones((3, 3), dtype=np.int64)
        ok, _ = hm.verify(hm.williamson_array(ones, ones, ones, ones))
        assert not ok

    def test_order_mismatch_rejected(self):
        one = np.array([[1]])
        two = np.ones((2, 2), dtype=np.int64)
        with pytest.raises(ValueError):
            hm.williamson_array(one, one, one, two)


class TestBaumertHallArray:
    def test_letter_balance_tripwire(self):
        cells = hm.baumert_hall_cells()
        assert len(cells) == 12 and all(len(r) == 12 for r in cells)
        for row in cells:
            letters = [letter for _, letter in row]
            assert all(letters.count(x) == 3 for x in "ABCD")
        for c in range(12):
            letters = [cells[r][c][1] for r in range(12)]
            assert all(letters.count(x) == 3 for x in "ABCD")

    def test_unit_blocks_give_order_12(self):
        one = np.array([[1]])
        H = hm.baumert_hall_array(one, one, one, one)
        ok, _ = hm.verify(H)
        assert ok and H.shape == (12, 12)

    def test_solved_blocks_give_order_36(self):
        H = hm.baumert_hall_array(*ground_blocks(3))
        ok, _ = hm.verify(H)
        assert ok and H.shape == (36, 36)


class TestGoethalsSeidel:
    def test_unit_blocks(self):
        one = np.array([[1]])
        H = hm.goethals_seidel(one, one, one, one)
        ok, _ = hm.verify(H)
        assert ok and H.shape == (4, 4)

    def test_pipeline_order_44(self):
        X, Y, Z, W = cons.turyn_sequences_from_values(4, [-1, -1, -1, 1, 1])
        base = cons.base_sequences(X, Y, Z, W)
        T = cons.t_sequences(*base)
        seeds = cons.seed_sequences(*T)
        H = hm.goethals_seidel(*[hm.circulant(s) for s in seeds])
        ok, _ = hm.verify(H)
        assert ok and H.shape == (44, 44)


class TestVerify:
    def test_order_two(self):
        ok, D = hm.verify(np.array([[1, 1], [1, -1]]))
        assert ok and hm.max_offdiagonal(D) == 0

    def test_all_ones_fails(self):
        ok, D = hm.verify(np.ones((2, 2), dtype=np.int64))
        assert not ok
        assert hm.max_offdiagonal(D) == 2

    def test_transpose_preserves_verification(self):
        H = hm.williamson_array(*ground_blocks(3))
        assert hm.verify(H)[0] and hm.verify(H.T)[0]

    def test_negation_and_permutation_preserve_verification(self, rng):
        H = hm.williamson_array(*ground_blocks(3))
        M = H.shape[0]
        P = np.array(H)
        rows = list(range(M))
        rng.shuffle(rows)
        P = P[rows]
        for i in range(M):
            if rng.random() < 0.5:
                P[i] *= -1
        for j in range(M):
            if rng.random() < 0.5:
                P[:, j] *= -1
        assert hm.verify(P)[0]

    def test_order_admissibility(self):
        assert hm.order_admissible(1)
        assert hm.order_admissible(2)
        assert hm.order_admissible(92)
        assert not hm.order_admissible(6)

    def test_non_sign_entries_rejected(self):
        with pytest.raises(ValueError):
            hm.verify(np.zeros((2, 2), dtype=np.int64))


class TestFormats:
    def test_matrix_round_trip(self):
        H = hm.williamson_array(*ground_blocks(3))
        buf = io.StringIO()
        hm.write_matrix(H, buf)
        again = hm.read_matrix(io.StringIO(buf.getvalue()))
        assert np.array_equal(H, again)

    def test_bad_character_rejected(self):
        with pytest.raises(ValueError):
            hm.read_matrix(io.StringIO("+-\n+x\n"))

    def test_ragged_rows_rejected(self):
        with pytest.raises(ValueError):
            hm.read_matrix(io.StringIO("+-\n+\n"))

    def test_report_line(self):
        line = hm.report_line(np.array([[1, 1], [1, -1]]))
        assert line == "ORDER=2 HADAMARD=yes MAX_OFFDIAG=0"

    def test_pbm_and_pgm_headers(self):
        H = np.array([[1, -1], [-1, 1]])
        buf = io.StringIO()
        hm.write_pbm(H, buf)
        assert buf.getvalue().splitlines()[:2] == ["P1", "2 2"]
        ok, D = hm.verify(H)
        buf = io.StringIO()
        hm.write_pgm(D, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "P2" and lines[1] == "2 2"
