import logging
from fractions import Fraction

import pytest

from inputselect.conftest import FOUR_STATE_TEXT
from inputselect.structural.core import StructuredSystem
from inputselect.structural.exceptions import ParseError
from inputselect.structural.utils.instances import (
    InstanceFile,
    dumps,
    dumps_json,
    loads,
    read_instance,
    write_instance,
)


class TestLoads:
    def test_four_state(self, four_state: StructuredSystem):
        instance = loads(FOUR_STATE_TEXT)
        assert instance.to_system() == four_state
        assert not instance.discrete
        assert not instance.outputs

    def test_costs_default_to_one(self):
        instance = loads("dims 2 2\nB 1 1\n")
        assert instance.costs == (1, 1)

    def test_rational_costs(self):
        assert loads("dims 1 2\ncosts 1/2 3\n").costs == (Fraction(1, 2), 3)

    def test_discrete_time(self):
        assert loads("dims 1 1\ntime discrete\n").discrete

    def test_duplicates_warn_and_collapse(self, caplog):
        with caplog.at_level(logging.WARNING, logger="inputselect"):
            instance = loads("dims 2 1\nA 2 1\nA 2 1\n")
        assert instance.a_entries == ((2, 1),)
        assert len(instance.duplicates) == 1
        assert "repeated on line 3" in caplog.text

    def test_output_block(self):
        instance = loads("dims 2 1\nA 2 1\nC 1 2\n")
        assert instance.outputs
        a_bar, c_bar, costs = instance.observation_pair()
        assert c_bar.shape == (1, 2)
        # The controllability instance is the dual (Āᵀ, C̄ᵀ).
        sys = instance.to_system()
        assert sys.a_bar.nonzeros == {(0, 1)}
        assert sys.b_bar.nonzeros == {(1, 0)}

    def test_input_block_read_as_outputs(self, four_state: StructuredSystem):
        a_bar, c_bar, costs = loads(FOUR_STATE_TEXT).observation_pair()
        assert c_bar == four_state.b_bar.transpose()
        assert costs == (1, 1, 10)

    @pytest.mark.parametrize(
        "text, line, message",
        [
            ("A 1 1\n", 1, "dims must come before"),
            ("dims 2 2\nA 3 1\n", 2, "outside a 2x2"),
            ("dims 2 2\nA 1\n", 2, "expected 2 integers"),
            ("dims 2 2\nA x 1\n", 2, "not an integer"),
            ("dims 2 2\ncosts 1\n", 2, "expected 2 costs"),
            ("dims 1 1\ncosts -\n", 2, "bad cost"),
            ("dims 1 1\nD 1 1\n", 2, "unknown statement"),
            ("dims 1 1\ntime sometimes\n", 2, "time must be"),
            ("dims 2 1\nB 1 1\nC 1 1\n", 3, "either B or C"),
            ("dims 1 1\ndims 1 1\n", 2, "dims given twice"),
            ("dims 0 1\ncosts 5\n", 1, "at least one state"),
            ("dims 2 -1\n", 1, "non-negative"),
        ],
    )
    def test_errors_carry_the_line(self, text: str, line: int, message: str):
        with pytest.raises(ParseError) as exc_info:
            loads(text)
        assert exc_info.value.line == line
        assert message in str(exc_info.value)

    def test_missing_dims(self):
        with pytest.raises(ParseError) as exc_info:
            loads("# nothing here\n")
        assert exc_info.value.line is None


class TestDumps:
    def test_canonical_form(self):
        text = dumps(loads(FOUR_STATE_TEXT))
        assert text.splitlines()[0] == "dims 4 3"
        assert text.splitlines()[-1] == "costs 1 1 10"
        assert "B 1 3\nB 2 2" in text

    def test_canonical_files_round_trip(self):
        canonical = dumps(loads(FOUR_STATE_TEXT))
        assert dumps(loads(canonical)) == canonical

    def test_json(self):
        instance = loads(FOUR_STATE_TEXT)
        assert loads(dumps_json(instance)) == instance

    def test_json_errors(self):
        with pytest.raises(ParseError):
            loads('{"n": 2}')
        with pytest.raises(ParseError):
            loads('{"n": 1, "m": 1, "A": [[2, 1]]}')

    def test_json_duplicates_warn_and_collapse(self, caplog):
        with caplog.at_level(logging.WARNING, logger="inputselect"):
            instance = loads('{"n": 2, "m": 1, "A": [[2, 1], [1, 1], [2, 1]], "B": [[1, 1], [1, 1]]}')
        assert instance.a_entries == ((1, 1), (2, 1))
        assert instance.b_entries == ((1, 1),)
        assert len(instance.duplicates) == 2
        assert "A (2, 1) repeated at position 3" in caplog.text

    @pytest.mark.parametrize("time, discrete", [("continuous", False), ("discrete", True)])
    def test_json_time(self, time: str, discrete: bool):
        assert loads(f'{{"n": 1, "m": 1, "time": "{time}"}}').discrete == discrete

    def test_json_unknown_time(self):
        with pytest.raises(ParseError, match="time must be"):
            loads('{"n": 1, "m": 1, "time": "sometimes"}')

    def test_json_needs_a_state(self):
        with pytest.raises(ParseError, match="at least one state"):
            loads('{"n": 0, "m": 1, "costs": ["5"]}')

    def test_from_system_keeps_the_time_flag(self, four_state: StructuredSystem):
        assert "time discrete" in dumps(InstanceFile.from_system(four_state, discrete=True))


class TestFiles:
    def test_write_and_read(self, tmp_path, four_state: StructuredSystem):
        for name in ("instance.txt", "instance.json"):
            path = tmp_path / name
            write_instance(InstanceFile.from_system(four_state), path)
            assert read_instance(path).to_system() == four_state
        assert (tmp_path / "instance.json").read_text().startswith("{")

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_instance(tmp_path / "missing.txt")
