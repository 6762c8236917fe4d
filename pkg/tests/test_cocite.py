import random

from litlens.cocite import (CociteParams, build_cocitation, build_slice_network,
                            filter_below_average_refs, merge_networks, select_top_cited)
from litlens.corpus import CitationContext, Record, assemble_corpus, slice_by_month

from oracles import cocitation_bruteforce


def make_corpus(month_refs: dict[str, tuple[int, list[str]]],
                contexts: list[CitationContext] | None = None):
    records = [Record(id=rid, year=2020, month=m, refs=refs)
               for rid, (m, refs) in month_refs.items()]
    corpus, _ = assemble_corpus(records, contexts or [])
    return corpus


def test_select_top_cited_basic():
    corpus = make_corpus({
        "1": (1, ["A", "B"]), "2": (1, ["A", "C"]), "3": (1, ["A", "B"]),
        "4": (1, ["A", "B"]), "5": (1, ["A", "C"]), "6": (1, ["C"]),
    })
    slices, _ = slice_by_month(corpus, (2020, 1), (2020, 1))
    # counts: A=5, B=3, C=3
    assert select_top_cited(slices[0], corpus, 1) == {"A"}
    # tie at the cutoff keeps both B and C
    assert select_top_cited(slices[0], corpus, 2) == {"A", "B", "C"}
    assert select_top_cited(slices[0], corpus, 99) == {"A", "B", "C"}


def test_filter_below_average():
    rec = Record(id="r", year=2020, refs=["A", "B", "C"])
    ctxs = [CitationContext("r", "A", "t", i) for i in range(3)]
    ctxs += [CitationContext("r", "B", "t", 0)]
    ctxs += [CitationContext("r", "C", "t", i) for i in range(2)]
    # counts A=3 B=1 C=2, mean = 2 -> keep A and C
    assert filter_below_average_refs(rec, ctxs) == ["A", "C"]


def test_filter_uniform_counts_keeps_all():
    rec = Record(id="r", year=2020, refs=["A", "B"])
    ctxs = [CitationContext("r", "A", "t", 0), CitationContext("r", "B", "t", 0)]
    assert filter_below_average_refs(rec, ctxs) == ["A", "B"]


def test_filter_no_contexts_inert():
    rec = Record(id="r", year=2020, refs=["A", "B"])
    assert filter_below_average_refs(rec, []) == ["A", "B"]


def test_build_cocitation_example():
    corpus = make_corpus({
        "1": (1, ["A", "B"]), "2": (1, ["A", "B"]), "3": (1, ["B", "C"]),
    })
    slices, _ = slice_by_month(corpus, (2020, 1), (2020, 1))
    net = build_cocitation(slices, corpus, CociteParams(top_n=99))
    assert net.edges == {("A", "B"): 2, ("B", "C"): 1}
    assert net.nodes["A"].citations == 2
    assert net.nodes["B"].citations == 3


def test_single_ref_no_edges():
    corpus = make_corpus({"1": (1, ["A"])})
    slices, _ = slice_by_month(corpus, (2020, 1), (2020, 1))
    net = build_cocitation(slices, corpus, CociteParams(top_n=10))
    assert set(net.nodes) == {"A"}
    assert net.edges == {}


def test_merge_equals_single_slice_build():
    # same records split over 2 slices vs built in one pass
    corpus = make_corpus({
        "1": (1, ["A", "B", "C"]), "2": (1, ["A", "B"]),
        "3": (2, ["A", "B", "C"]), "4": (2, ["B", "C"]),
    })
    slices, _ = slice_by_month(corpus, (2020, 1), (2020, 2))
    merged = build_cocitation(slices, corpus, CociteParams(top_n=99))
    per_slice = [build_slice_network(s, corpus, CociteParams(top_n=99)) for s in slices]
    assert merge_networks(per_slice).edges == merged.edges
    # merge associativity/commutativity
    a, b = per_slice
    left = merge_networks([merge_networks([a]), b])
    right = merge_networks([b, a])
    assert left.edges == right.edges
    assert {n: i.citations for n, i in left.nodes.items()} == \
           {n: i.citations for n, i in right.nodes.items()}


def test_bruteforce_equivalence_on_random_fixture():
    rng = random.Random(7)
    refs = [f"R{i}" for i in range(12)]
    citing = {}
    for i in range(60):
        citing[f"c{i}"] = rng.sample(refs, rng.randint(1, 5))
    corpus = make_corpus({rid: (1, lst) for rid, lst in citing.items()})
    slices, _ = slice_by_month(corpus, (2020, 1), (2020, 1))
    net = build_cocitation(slices, corpus, CociteParams(top_n=999))
    expected = cocitation_bruteforce(citing, set(net.nodes))
    assert net.edges == expected
    # symmetry and weight semantics: weight == #records citing both endpoints
    for (a, b), w in net.edges.items():
        direct = sum(1 for lst in citing.values() if a in lst and b in lst)
        assert w == direct


def test_context_filter_never_increases_weights():
    rng = random.Random(9)
    refs = [f"R{i}" for i in range(8)]
    month_refs = {}
    contexts = []
    for i in range(30):
        rid = f"c{i}"
        chosen = rng.sample(refs, rng.randint(2, 4))
        month_refs[rid] = (1, chosen)
        for ref in chosen:
            for _ in range(rng.randint(0, 3)):
                contexts.append(CitationContext(rid, ref, f"text {rid} {ref}", 0))
    corpus = make_corpus(month_refs, contexts)
    slices, _ = slice_by_month(corpus, (2020, 1), (2020, 1))
    plain = build_cocitation(slices, corpus, CociteParams(top_n=99, context_filter=False))
    filtered = build_cocitation(slices, corpus, CociteParams(top_n=99, context_filter=True))
    for key, w in filtered.edges.items():
        assert w <= plain.edges[key]
