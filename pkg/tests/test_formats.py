import json

import pytest

from matchbook.constructions import complete_embedding, kpcq_embedding
from matchbook.formats import (
    FormatError,
    dumps,
    embedding_to_dict,
    graph_to_dict,
    load_embedding,
    load_graph,
    parse_embedding_text,
    parse_graph_text,
    save_embedding,
    save_graph,
)
from matchbook.graphs import (
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    kpcq,
    path,
)

GENERATED = [
    complete(1),
    complete(5),
    cycle(3),
    cycle(6),
    path(4),
    complete_bipartite(3, 3),
    hypercube(3),
    kpcq(5, 3),
    cartesian_product(complete(3), path(3)),
]


@pytest.mark.parametrize("g", GENERATED, ids=lambda g: g.name)
def test_graph_round_trip(g):
    doc = parse_graph_text(dumps(graph_to_dict(g)))
    assert doc == g
    assert doc.name == g.name
    # family survives, including nested product factors
    if g.family:
        assert doc.family[0] == g.family[0]


def test_graph_file_round_trip(tmp_path):
    p = tmp_path / "g.json"
    save_graph(kpcq(4, 3), p)
    g = load_graph(p)
    assert g == kpcq(4, 3) and g.family == ("kpcq", 4, 3)


def test_kpcq_file_carries_label_table():
    doc = graph_to_dict(kpcq(5, 3))
    assert doc["product_labels"][0] == [0, 0]
    assert doc["product_labels"][7] == [2, 1]  # id 7 = column 1, row 2
    assert len(doc["product_labels"]) == 15


def test_embedding_round_trip(tmp_path):
    emb = complete_embedding(5)
    p = tmp_path / "e.json"
    save_embedding(emb, p, scheme="complete-congruence", repaired=False)
    doc = load_embedding(p)
    assert doc.embedding == emb
    assert doc.scheme == "complete-congruence" and doc.repaired is False


def test_embedding_round_trip_product_graph(tmp_path):
    out = kpcq_embedding(4, 4)
    p = tmp_path / "e.json"
    save_embedding(out.embedding, p, scheme=out.scheme)
    doc = load_embedding(p)
    assert doc.embedding == out.embedding


def test_graph_rejects_duplicate_edge():
    with pytest.raises(FormatError, match="duplicate edge"):
        parse_graph_text('{"n": 3, "edges": [[0, 1], [1, 0]]}')


def test_graph_rejects_out_of_range():
    with pytest.raises(FormatError, match="out of range"):
        parse_graph_text('{"n": 2, "edges": [[0, 7]]}')


def test_graph_rejects_self_loop():
    with pytest.raises(FormatError, match="self-loop"):
        parse_graph_text('{"n": 2, "edges": [[1, 1]]}')


def test_graph_rejects_bad_shapes():
    with pytest.raises(FormatError, match="must be a JSON object"):
        parse_graph_text("[1, 2]")
    with pytest.raises(FormatError, match="'n'"):
        parse_graph_text('{"edges": []}')
    with pytest.raises(FormatError, match="not a pair"):
        parse_graph_text('{"n": 3, "edges": [[0, 1, 2]]}')
    with pytest.raises(FormatError, match="not valid JSON"):
        parse_graph_text("{nope")


def _emb_doc(**overrides):
    doc = embedding_to_dict(complete_embedding(3))
    doc.update(overrides)
    return json.dumps(doc)


def test_embedding_rejects_non_permutation_spine():
    with pytest.raises(FormatError, match="not a permutation"):
        parse_embedding_text(_emb_doc(spine=[0, 1, 1]))


def test_embedding_rejects_wrong_pages_length():
    with pytest.raises(FormatError, match="entries for"):
        parse_embedding_text(_emb_doc(pages=[0, 1]))


def test_embedding_rejects_page_out_of_range():
    with pytest.raises(FormatError, match="out of range"):
        parse_embedding_text(_emb_doc(pages=[0, 1, 9]))


def test_embedding_rejects_non_contiguous_pages():
    with pytest.raises(FormatError, match="not contiguous"):
        parse_embedding_text(_emb_doc(page_count=7))


def test_embedding_rejects_bad_scheme_type():
    with pytest.raises(FormatError, match="'scheme'"):
        parse_embedding_text(_emb_doc(scheme=3))
