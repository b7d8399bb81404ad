import pytest

from dynorient.workload import KINDS, generate_workload


@pytest.mark.parametrize("kind", KINDS)
def test_empty_and_deterministic(kind):
    assert generate_workload(kind, 5, 0) == ""
    a = generate_workload(kind, 5, 300, n=12)
    assert a == generate_workload(kind, 5, 300, n=12)
    assert a != generate_workload(kind, 6, 300, n=12)


@pytest.mark.parametrize("kind", KINDS)
def test_streams_are_legal(kind):
    text = generate_workload(kind, 1, 500, n=10, query_every=50)
    present = set()
    updates = 0
    for line in text.splitlines():
        op, *rest = line.split()
        if op == "?":
            assert rest == ["density"]
            continue
        updates += 1
        u, v = map(int, rest)
        assert 0 <= u < v < 10
        if op == "+":
            assert (u, v) not in present
            present.add((u, v))
        else:
            present.remove((u, v))
    assert updates == 500


def test_density_ramp_rises_then_falls():
    lines = generate_workload("density_ramp", 3, 400, n=12).splitlines()
    live, sizes = 0, []
    for line in lines:
        live += 1 if line[0] == "+" else -1
        sizes.append(live)
    peak = max(sizes)
    assert sizes[len(sizes) // 2 - 1] >= peak - 10
    assert sizes[-1] < peak // 2


def test_gnm_reaches_edge_target():
    lines = generate_workload("random_gnm", 0, 40, n=16, m=40).splitlines()
    assert all(line.startswith("+") for line in lines)


def test_unknown_kind():
    with pytest.raises(ValueError):
        generate_workload("nope", 0, 10)
