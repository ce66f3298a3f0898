import json
from itertools import combinations

import pytest

from monopole_corners import manybody as MB
from monopole_corners import partitions as P
from monopole_corners.errors import ChainError
from monopole_corners.partitions import SetPartition


def test_diagonal_structure_k2():
    ws = MB.diagonal_structure(2, 3)
    assert ws.ambient_dim == 3
    assert sorted(ws.dims.values()) == [0, 3]


def test_diagonal_structure_k3():
    ws = MB.diagonal_structure(3, 3)
    assert ws.ambient_dim == 6
    assert sorted(ws.dims.values()) == [0, 3, 3, 3, 6]
    assert ws.zero_label() == P.one_block(3).to_rgs()
    assert ws.top_label() == P.singletons(3).to_rgs()


def test_top_dimension():
    assert MB.diagonal_structure(4, 3).ambient_dim == 9


def test_diagonal_validates_clean():
    for k in range(2, 7):
        for m in (1, 2, 3):
            assert MB.validate(MB.diagonal_structure(k, m)) == []


def test_validate_missing_zero():
    bad = MB.ManyBodyStructure(3, {"L": 1, "V": 3}, [("L", "V", "L")])
    violations = MB.validate(bad)
    assert len(violations) == 1
    assert "zero" in violations[0]


def test_validate_missing_intersection():
    # two planes in general position without their intersection line
    bad = MB.ManyBodyStructure(
        3,
        {"0": 0, "P1": 2, "P2": 2, "V": 3},
        [("0", "P1", "0"), ("0", "P2", "0"), ("0", "V", "0"),
         ("P1", "V", "P1"), ("P2", "V", "P2")],
    )
    violations = MB.validate(bad)
    assert any("closure" in v for v in violations)


def test_validate_dimension_monotonicity():
    bad = MB.ManyBodyStructure(
        3,
        {"0": 0, "A": 2, "B": 2, "V": 3},
        [("0", "A", "0"), ("0", "B", "0"), ("0", "V", "0"),
         ("A", "B", "A"), ("A", "V", "A"), ("B", "V", "B")],
    )
    violations = MB.validate(bad)
    assert any("monotone" in v for v in violations)


def test_hypersurfaces_counts():
    ws = MB.diagonal_structure(3, 3)
    hs = MB.hypersurfaces(ws)
    assert len(hs) == 4
    assert ws.top_label() in hs
    assert ws.zero_label() not in hs
    # boundary hypersurfaces of the free boundary: nonzero elements below top
    assert len(hs) - 1 == len(ws.dims) - 2


def test_comparable():
    ws = MB.diagonal_structure(3, 3)
    a = SetPartition(3, [[1, 2], [3]]).to_rgs()
    b = SetPartition(3, [[1, 3], [2]]).to_rgs()
    assert MB.comparable(ws, a, a)
    assert not MB.comparable(ws, a, b)
    assert MB.comparable(ws, a, ws.top_label())
    with pytest.raises(ValueError):
        MB.comparable(ws, a, "nope")


def test_containment_matches_refinement_exhaustively():
    for k in range(2, 6):
        ws = MB.diagonal_structure(k, 3)
        parts = P.all_partitions(k)
        for a, b in combinations(parts, 2):
            la, lb = a.to_rgs(), b.to_rgs()
            # D_a is contained in D_b iff b refines a
            assert ws.leq(la, lb) == P.refines(b, a)
            assert ws.meet(la, lb) == P.join(a, b).to_rgs()


def test_face_of_chain_free_boundary():
    ws = MB.diagonal_structure(3, 3)
    face = MB.face_of_chain(ws, [ws.top_label()])
    assert [f.kind for f in face.factors] == ["B"]
    assert face.total_dim == ws.ambient_dim - 1


def test_face_of_chain_one_diagonal():
    ws = MB.diagonal_structure(3, 3)
    lam = SetPartition(3, [[1, 2], [3]])
    face = MB.face_of_chain(ws, [lam.to_rgs()])
    assert [(f.kind, f.dim) for f in face.factors] == [("M", 3), ("B", 2)]
    assert face.total_dim == 5


def test_face_of_chain_length_two():
    ws = MB.diagonal_structure(3, 3)
    lam = SetPartition(3, [[1, 2], [3]])
    face = MB.face_of_chain(ws, [lam.to_rgs(), ws.top_label()])
    assert face.total_dim == 4
    assert face.codim == 2
    # order-insensitive input
    same = MB.face_of_chain(ws, [ws.top_label(), lam.to_rgs()])
    assert same == face


def test_face_dims_telescope_for_all_chains():
    for k in (3, 4):
        ws = MB.diagonal_structure(k, 3)
        parts = [p for p in P.all_partitions(k) if not p.is_one_block()]
        labels = [p.to_rgs() for p in parts]
        for d in (1, 2, 3):
            for chain in combinations(labels, d):
                try:
                    face = MB.face_of_chain(ws, list(chain))
                except ChainError:
                    continue
                assert face.total_dim == ws.ambient_dim - d


def test_face_of_chain_errors():
    ws = MB.diagonal_structure(3, 3)
    a = SetPartition(3, [[1, 2], [3]]).to_rgs()
    b = SetPartition(3, [[1, 3], [2]]).to_rgs()
    with pytest.raises(ChainError):
        MB.face_of_chain(ws, [a, b])
    with pytest.raises(ChainError):
        MB.face_of_chain(ws, [a, a])
    with pytest.raises(ChainError):
        MB.face_of_chain(ws, [ws.zero_label()])
    with pytest.raises(ChainError):
        MB.face_of_chain(ws, [])


def test_constructor_validation():
    with pytest.raises(ValueError):
        MB.diagonal_structure(1, 3)
    with pytest.raises(ValueError):
        MB.diagonal_structure(3, 0)
    with pytest.raises(ValueError):
        MB.ManyBodyStructure(2, {"a": 5}, [])
    with pytest.raises(ValueError):
        MB.ManyBodyStructure(2, {"a": 1}, [("a", "b", "a")])


def test_json_round_trip():
    ws = MB.diagonal_structure(4, 2)
    rt = MB.ManyBodyStructure.from_json_dict(json.loads(json.dumps(ws.to_json_dict())))
    assert rt.ambient_dim == ws.ambient_dim
    assert rt.dims == ws.dims
    assert MB.validate(rt) == []
    for a, b in combinations(ws.labels, 2):
        assert rt.meet(a, b) == ws.meet(a, b)
