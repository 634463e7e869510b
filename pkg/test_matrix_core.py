"""
Unit tests for the matrix core: CMatrix, the JSON wire format, matrix
operations, superoperator vectorization, tolerances and settings.
"""

import numpy as np
import pytest

from src.config import get_settings
from src.models import (
    CMatrix,
    ConfigurationError,
    DimensionMismatchError,
    DimensionTooLargeError,
    MatrixFormatError,
    SuperOp,
    ToleranceContext,
)
from src.models.superop import unvec, vec
from src.utils import commutator, direct_sum, dumps, fro_norm, kron, loads, power, rank, read_matrix, write_matrix
from src.utils.matrix_ops import nilpotency_index


class TestCMatrix:
    """
    Test suite for the CMatrix value type.
    """

    def test_identity_and_zeros(self):
        """Test the basic constructors."""
        I = CMatrix.identity(3)
        assert I.dim == 3
        np.testing.assert_array_equal(I.data, np.eye(3))
        assert not np.any(CMatrix.zeros(2).data)

    def test_read_only(self):
        """The wrapped array cannot be written through."""
        M = CMatrix.from_rows([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            M.data[0, 0] = 5

    def test_constructor_copies_input(self):
        """Mutating the source array leaves the matrix unchanged."""
        source = np.eye(2, dtype=np.complex128)
        M = CMatrix(source)
        source[0, 0] = 7
        assert M.data[0, 0] == 1

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            CMatrix(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            CMatrix(np.array([[np.nan, 0], [0, 1]]))

    def test_adjoint(self):
        """H is the conjugate transpose."""
        M = CMatrix.from_rows([[1, 2j], [0, 3]])
        np.testing.assert_array_equal(M.H.data, np.array([[1, 0], [-2j, 3]]))

    def test_arithmetic(self):
        A = CMatrix.from_rows([[1, 1], [0, 1]])
        B = CMatrix.from_rows([[1, 0], [1, 1]])
        np.testing.assert_array_equal((A + B).data, [[2, 1], [1, 2]])
        np.testing.assert_array_equal((A - B).data, [[0, 1], [-1, 0]])
        np.testing.assert_array_equal((A @ B).data, [[2, 1], [1, 1]])
        np.testing.assert_array_equal((2 * A).data, [[2, 2], [0, 2]])

    def test_dimension_mismatch(self):
        """Binary operations on different dims raise DimensionMismatchError."""
        with pytest.raises(DimensionMismatchError):
            CMatrix.identity(2) + CMatrix.identity(3)
        with pytest.raises(DimensionMismatchError):
            CMatrix.identity(2) @ CMatrix.identity(3)


class TestWireFormat:
    """
    Test suite for the {"dim", "data": [[re, im], ...]} format.
    """

    def test_to_json_is_row_major(self):
        M = CMatrix.from_rows([[1, 2j], [3, 4]])
        assert M.to_json() == {
            "dim": 2,
            "data": [[1.0, 0.0], [0.0, 2.0], [3.0, 0.0], [4.0, 0.0]],
        }

    def test_from_json_round_trip_is_exact(self):
        """Shortest-repr floats reproduce every binary64 value."""
        rng = np.random.default_rng(7)
        M = CMatrix(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        assert CMatrix.from_json(loads(dumps(M.to_json()))) == M

    def test_missing_field_is_named(self):
        with pytest.raises(MatrixFormatError) as info:
            CMatrix.from_json({"dim": 1})
        assert info.value.field == "data"

    def test_bad_entry_is_named(self):
        with pytest.raises(MatrixFormatError) as info:
            CMatrix.from_json({"dim": 1, "data": [[1.0, "x"]]})
        assert info.value.field == "data[0][1]"

    def test_wrong_entry_count(self):
        with pytest.raises(MatrixFormatError) as info:
            CMatrix.from_json({"dim": 2, "data": [[1.0, 0.0]]})
        assert info.value.field == "data"

    def test_bad_dim(self):
        for dim in (0, -1, True, "2"):
            with pytest.raises(MatrixFormatError) as info:
                CMatrix.from_json({"dim": dim, "data": []})
            assert info.value.field == "dim"

    def test_loads_rejects_nan(self):
        with pytest.raises(MatrixFormatError):
            loads('{"dim": 1, "data": [[NaN, 0.0]]}')

    def test_loads_rejects_overflow(self):
        with pytest.raises(MatrixFormatError):
            loads('{"dim": 1, "data": [[1e999, 0.0]]}')

    def test_loads_reports_syntax_errors(self):
        with pytest.raises(MatrixFormatError):
            loads('{"dim": 1,')

    def test_dumps_is_deterministic(self):
        assert dumps({"b": 1, "a": [0.1]}) == '{\n  "a": [\n    0.1\n  ],\n  "b": 1\n}\n'

    def test_file_round_trip(self, tmp_path):
        M = CMatrix.from_rows([[0.1, 1 - 2j], [3.5, -4]])
        path = tmp_path / "sub" / "m.json"
        write_matrix(path, M)
        assert read_matrix(path) == M

    def test_read_matrix_names_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "data": [[1, 0]]}', encoding="utf-8")
        with pytest.raises(MatrixFormatError) as info:
            read_matrix(path)
        assert "bad.json" in str(info.value)
        assert info.value.field == "data"

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(MatrixFormatError):
            read_matrix(tmp_path / "absent.json")


class TestMatrixOps:
    """
    Test suite for matrix_ops.
    """

    def test_power(self):
        J = CMatrix.from_rows([[1, 1], [0, 1]])
        np.testing.assert_array_equal(power(J, 3).data, [[1, 3], [0, 1]])
        assert power(J, 0) == CMatrix.identity(2)

    def test_commutator(self):
        A = CMatrix.from_rows([[0, 1], [0, 0]])
        B = CMatrix.from_rows([[0, 0], [1, 0]])
        np.testing.assert_array_equal(commutator(A, B).data, [[1, 0], [0, -1]])

    def test_kron_matches_numpy(self):
        A = CMatrix.from_rows([[1, 2], [3, 4]])
        B = CMatrix.from_rows([[0, 1], [1, 0]])
        np.testing.assert_array_equal(kron(A, B).data, np.kron(A.data, B.data))

    def test_kron_guard(self):
        """Results above the max_kron_dim setting (64) are rejected."""
        with pytest.raises(DimensionTooLargeError):
            kron(CMatrix.identity(9), CMatrix.identity(8))
        assert kron(CMatrix.identity(8), CMatrix.identity(8)).dim == 64

    def test_direct_sum(self):
        M = direct_sum(CMatrix.identity(1), CMatrix.from_rows([[0, 1], [0, 0]]))
        np.testing.assert_array_equal(M.data, [[1, 0, 0], [0, 0, 1], [0, 0, 0]])

    def test_rank_and_nilpotency(self):
        N = CMatrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert rank(N) == 2
        assert nilpotency_index(N) == 3
        assert nilpotency_index(CMatrix.identity(2)) is None

    def test_fro_norm(self):
        assert fro_norm(CMatrix.identity(4)) == pytest.approx(2.0)


class TestSuperOp:
    """
    Test suite for column-stacking vectorization.
    """

    def test_vec_is_column_stacking(self):
        X = CMatrix.from_rows([[1, 2], [3, 4]])
        np.testing.assert_array_equal(vec(X), [1, 3, 2, 4])
        assert unvec(vec(X), 2) == X

    def test_kron_realizes_two_sided_multiplication(self):
        """superop(X -> B X A) = kron(A^T, B)."""
        rng = np.random.default_rng(3)
        A, B, X = (CMatrix(rng.standard_normal((3, 3))) for _ in range(3))
        op = SuperOp(3, kron(A.T, B))
        assert op.apply(X).allclose(B @ X @ A, atol=1e-12)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            SuperOp(2, CMatrix.identity(3))


class TestTolerance:
    """
    Test suite for ToleranceContext and settings.
    """

    def test_threshold(self):
        tol = ToleranceContext(atol=1e-12, rtol=1e-9)
        assert tol.threshold(10.0) == pytest.approx(1e-12 + 1e-8)
        assert tol.is_zero(1e-9, 10.0)
        assert not tol.is_zero(1e-6, 10.0)
        assert tol.is_strictly_nonzero(1.0, 10.0)
        assert not tol.is_strictly_nonzero(1e-6, 10.0)

    def test_negative_tolerance_rejected(self):
        with pytest.raises(ValueError):
            ToleranceContext(atol=-1.0)

    def test_defaults(self):
        settings = get_settings()
        assert settings.max_dim == 16
        assert settings.max_order == 62
        assert settings.atol == 1e-12
        assert settings.rtol == 1e-9

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("ISOSYM_MAX_DIM", "8")
        assert get_settings().max_dim == 8

    def test_invalid_env(self, monkeypatch):
        monkeypatch.setenv("ISOSYM_MAX_DIM", "lots")
        with pytest.raises(ConfigurationError):
            get_settings()

    def test_invalid_log_level(self, monkeypatch):
        monkeypatch.setenv("ISOSYM_LOG_LEVEL", "LOUD")
        with pytest.raises(ConfigurationError):
            get_settings()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
