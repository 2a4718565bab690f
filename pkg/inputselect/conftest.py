import pytest

from inputselect.structural.core import StructuredSystem
from inputselect.structural.models import Instance
from inputselect.structural.tests.factories import InstanceFactory

# x1 -> x1, x2 -> x1, x2 -> x2, x1 -> x3, x2 -> x3, x4 -> x3, x4 -> x4 (0-based row, column).
FOUR_STATE_A = [(0, 0), (0, 1), (1, 1), (2, 0), (2, 1), (2, 3), (3, 3)]
# u1 -> x1, x3; u2 -> x2, x3; u3 -> x1, x2, x4.
FOUR_STATE_B = [(0, 0), (2, 0), (1, 1), (2, 1), (0, 2), (1, 2), (3, 2)]

FOUR_STATE_TEXT = """\
# Four states, three candidate inputs.
dims 4 3
A 1 1
A 1 2
A 2 2
A 3 1
A 3 2
A 3 4
A 4 4
B 1 1
B 3 1
B 2 2
B 3 2
B 1 3
B 2 3
B 4 3
costs 1 1 10
"""

# x1 drives both x2 and x3.
FAN_OUT_A = [(1, 0), (2, 0)]


@pytest.fixture
def four_state() -> StructuredSystem:
    return StructuredSystem.build(4, 3, FOUR_STATE_A, FOUR_STATE_B, [1, 1, 10])


@pytest.fixture
def four_state_uniform(four_state: StructuredSystem) -> StructuredSystem:
    return four_state.with_costs([1, 1, 1])


@pytest.fixture
def fan_out_inaccessible() -> StructuredSystem:
    """The single input drives x2; nothing reaches x1 or x3."""
    return StructuredSystem.build(3, 1, FAN_OUT_A, [(1, 0)])


@pytest.fixture
def fan_out_dilation() -> StructuredSystem:
    """The single input drives x1, which alone has to steer x2 and x3."""
    return StructuredSystem.build(3, 1, FAN_OUT_A, [(0, 0)])


@pytest.fixture
def four_state_file(tmp_path) -> str:
    path = tmp_path / "four-state.txt"
    path.write_text(FOUR_STATE_TEXT)
    return str(path)


@pytest.fixture
def instance(db) -> Instance:
    return InstanceFactory()
