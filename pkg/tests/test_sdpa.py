"""Sparse SDP emission and solution parsing"""

from fractions import Fraction

import numpy as np
import pytest

from turanflag.errors import FormatError, GraphError
from turanflag.sdp.problem import FlagProblem
from turanflag.sdp.sdpa import (
    SdpEntry,
    build_sdp,
    emit_sdp,
    parse_sdp_text,
    parse_solution,
    read_sdp,
)


@pytest.fixture(scope="module")
def k4_problem(k4_admissible_5):
    from turanflag.core import catalog
    return FlagProblem.build(5, catalog.family("k4"), admissible=k4_admissible_5)


@pytest.fixture
def k4_sdp(k4_problem):
    return emit_sdp(k4_problem.admissible, k4_problem.contexts, matrices=k4_problem.matrices)


class TestEmit:
    def test_layout(self, k4_problem, k4_sdp):
        m = len(k4_problem)
        assert k4_sdp.num_constraints == m
        assert k4_sdp.block_sizes == [1, 2, 8, 7, -m]
        assert k4_sdp.type_blocks == [2, 8, 7]
        assert k4_sdp.entries[0] == SdpEntry(0, 1, 1, 1, -1)

    def test_coefficients_are_integers(self, k4_sdp):
        assert all(isinstance(v, int) for v in k4_sdp.objective)
        assert all(isinstance(e.value, int) for e in k4_sdp.entries)
        assert all(e.i <= e.j for e in k4_sdp.entries)

    def test_rows_scale_exactly(self, k4_problem, k4_sdp):
        # row i: D*lambda - D*<P, Q> - D*s_i = D*d(H_i)
        for i, density in enumerate(k4_problem.densities, start=1):
            row = [e for e in k4_sdp.entries if e.matno == i]
            scale = next(e.value for e in row if e.block == 1)
            assert Fraction(k4_sdp.objective[i - 1], scale) == density
            slack = [e for e in row if e.block == 5]
            assert slack == [SdpEntry(i, 5, i, i, -scale)]
            for e in row:
                if 2 <= e.block <= 4:
                    P = k4_problem.matrices[i - 1][e.block - 2]
                    assert Fraction(-e.value, scale) == P.entries[e.i - 1][e.j - 1]

    def test_text_parses_back(self, k4_sdp, tmp_path):
        path = tmp_path / "k4.dat-s"
        k4_sdp.write(path)
        text = path.read_text()
        assert text.startswith('" ')
        again = read_sdp(path)
        assert again.num_constraints == k4_sdp.num_constraints
        assert again.block_sizes == k4_sdp.block_sizes
        assert again.objective == k4_sdp.objective
        assert again.entries == k4_sdp.entries

    def test_emit_writes_file(self, k4_problem, tmp_path):
        path = tmp_path / "out.dat-s"
        emit_sdp(k4_problem.admissible, k4_problem.contexts, path, k4_problem.matrices)
        assert path.exists()

    def test_rejects_empty(self, k4_problem):
        with pytest.raises(GraphError):
            emit_sdp([], k4_problem.contexts)
        with pytest.raises(GraphError):
            build_sdp([], [], [])

    def test_rejects_wrong_block_size(self, k4_problem):
        with pytest.raises(GraphError):
            build_sdp(k4_problem.densities[:1], k4_problem.matrices[:1], [2, 8, 6])


class TestParseSdp:
    def test_comments_and_braces(self):
        text = "* comment\n\" another\n1\n2\n{1, -1}\n{3/4}\n0 1 1 1 -1\n1 1 1 1 4\n1 2 1 1 -4\n"
        sdp = parse_sdp_text(text)
        assert sdp.comments == ["comment", "another"]
        assert sdp.block_sizes == [1, -1]
        assert sdp.objective == [Fraction(3, 4)]
        assert len(sdp.entries) == 3

    @pytest.mark.parametrize("text, line", [
        ("1\n2\n1 -1\n1\n0 1 1 1\n", 5),
        ("1\n2\n1 -1\n1\n0 1 x 1 1\n", 5),
        ("1\n2\n1 -1\n1\n0 1 1 1 abc\n", 5),
        ("1\n3\n1 -1\n1\n", 3),
        ("2\n2\n1 -1\n1\n", 4),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(FormatError) as info:
            parse_sdp_text(text, "p.dat-s")
        assert info.value.line == line
        assert info.value.path == "p.dat-s"

    def test_truncated(self):
        with pytest.raises(FormatError):
            parse_sdp_text("1\n2\n")


CSDP_SOLUTION = """\
0.5 0.25
1 1 1 1 0.0
2 1 1 1 0.2222222
2 2 1 1 0.5
2 2 1 2 -0.1
2 2 2 2 0.3
2 3 1 1 1.5
2 4 1 1 0.0
2 4 2 2 0.001
"""


class TestSolution:
    def test_csdp_layout(self, tmp_path):
        path = tmp_path / "toy.sol"
        path.write_text(CSDP_SOLUTION)
        solution = parse_solution(path, objective=-0.2222222)
        assert solution.bound == pytest.approx(0.2222222)
        assert len(solution.blocks) == 2
        assert np.allclose(solution.blocks[0], [[0.5, -0.1], [-0.1, 0.3]])
        assert solution.is_symmetric()
        assert np.allclose(solution.slacks, [0.0, 0.001])
        assert solution.objective == -0.2222222

    def test_sized_by_problem(self, tmp_path):
        path = tmp_path / "toy.sol"
        path.write_text(CSDP_SOLUTION)
        problem = parse_sdp_text("2\n4\n1 2 1 -2\n0 0\n")
        solution = parse_solution(path, problem)
        assert [B.shape for B in solution.blocks] == [(2, 2), (1, 1)]

    @pytest.mark.parametrize("keep", range(1, 9))
    def test_truncated_at_a_line_boundary(self, tmp_path, keep):
        path = tmp_path / "cut.sol"
        path.write_text("\n".join(CSDP_SOLUTION.splitlines()[:keep]) + "\n")
        problem = parse_sdp_text("2\n4\n1 2 1 -2\n0 0\n")
        with pytest.raises(FormatError, match="truncated"):
            parse_solution(path, problem)

    def test_short_dual_vector(self, tmp_path):
        path = tmp_path / "short.sol"
        path.write_text(CSDP_SOLUTION.replace("0.5 0.25\n", "0.5\n"))
        problem = parse_sdp_text("2\n4\n1 2 1 -2\n0 0\n")
        with pytest.raises(FormatError, match="2 constraints"):
            parse_solution(path, problem)

    def test_sdpa_output(self, tmp_path):
        path = tmp_path / "toy.out"
        path.write_text(
            "objValPrimal = -2.2222e-01\n"
            "xVec = \n{+1.0e+00,+2.0e+00}\n"
            "yMat = \n{\n{+2.2222e-01 }\n"
            "{ {+5.0e-01,-1.0e-01 },\n  {-1.0e-01,+3.0e-01 }   }\n"
            "{+0.0e+00,+1.0e-03 }\n}\n"
        )
        solution = parse_solution(path)
        assert solution.bound == pytest.approx(0.22222)
        assert np.allclose(solution.blocks[0], [[0.5, -0.1], [-0.1, 0.3]])
        assert np.allclose(solution.slacks, [0.0, 0.001])

    @pytest.mark.parametrize("body, message", [
        ("", "empty"),
        ("0.5\n2 1 1 1\n", "5 fields"),
        ("0.5\n2 1 one 1 0.2\n", "malformed"),
        ("0.5\n2 2 1 1 0.2\n2 3 1 1 0.0\n", "bound"),
    ])
    def test_errors(self, tmp_path, body, message):
        path = tmp_path / "bad.sol"
        path.write_text(body)
        with pytest.raises(FormatError, match=message):
            parse_solution(path)

    def test_indices_checked_against_problem(self, tmp_path):
        path = tmp_path / "bad.sol"
        path.write_text("0.5\n2 1 1 1 0.2\n2 2 3 3 0.1\n2 3 1 1 0.0\n")
        problem = parse_sdp_text("1\n3\n1 2 -1\n0\n")
        with pytest.raises(FormatError, match="outside block"):
            parse_solution(path, problem)
        path.write_text("0.5\n2 1 1 1 0.2\n2 9 1 1 0.1\n")
        with pytest.raises(FormatError, match="out of range"):
            parse_solution(path, problem)
