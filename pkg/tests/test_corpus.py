import pytest

from litlens.corpus import (CitationContext, Record, assemble_corpus, month_label,
                            months_between, parse_context_sidecar, parse_field_records,
                            parse_month_arg, serialize_contexts, serialize_records,
                            slice_by_month)

RECORD_BLOCK = """\
UT 3006967091
TI 2019 novel coronavirus of pneumonia in wuhan china emerging attack and management strategies
SO Clinical and translational medicine
PY 2020
PM FEB
DI 10.1186/540169-020-00271-Z
TC 60
CR 1001
   1002
   1001
ER
"""


def test_parse_single_record():
    result = parse_field_records(RECORD_BLOCK)
    assert result.block_count == 1
    assert not result.diagnostics
    [rec] = result.records
    assert rec.id == "3006967091"
    assert rec.year == 2020
    assert rec.month == 2
    assert rec.title.startswith("2019 novel coronavirus")
    assert rec.citation_count == 60
    assert rec.refs == ["1001", "1002"]  # duplicate collapsed


def test_parse_empty_input():
    result = parse_field_records("")
    assert result.records == []
    assert result.block_count == 0


def test_missing_year_skipped_with_diagnostic():
    text = "UT 1\nTI no year here\nER\nUT 2\nPY 2020\nER\n"
    result = parse_field_records(text)
    assert result.block_count == 2
    assert len(result.records) == 1
    assert result.records[0].id == "2"
    assert len(result.diagnostics) == 1
    assert result.diagnostics[0].kind == "MalformedRecord"
    # parsing is total: parsed + skipped == blocks
    assert len(result.records) + len(result.diagnostics) == result.block_count


def test_unknown_tag_preserved_in_extras():
    text = "UT 1\nPY 2020\nZZ mystery value\nZZ second\nER\n"
    result = parse_field_records(text)
    assert result.records[0].extras == {"ZZ": ["mystery value", "second"]}
    assert not result.diagnostics


def test_continuation_extends_scalar_fields():
    text = "UT 1\nPY 2020\nAB first part\n   second part\nER\n"
    result = parse_field_records(text)
    assert result.records[0].abstract == "first part second part"


def test_year_window_warning():
    text = "UT 1\nPY 2099\nER\n"
    result = parse_field_records(text, year_window=(1900, 2030))
    assert len(result.records) == 1  # kept, warned
    assert result.diagnostics[0].kind == "YearOutOfWindow"


def test_round_trip_identity():
    records = [
        Record(id="11", year=2020, month=3, title="alpha beta", venue="Venue A",
               abstract="some abstract text", doi="10.1/x", refs=["5", "6"],
               citation_count=2, extras={"PT": ["J"]}),
        Record(id="12", year=2019, title="gamma", refs=["7"]),
    ]
    text = serialize_records(records)
    reparsed = parse_field_records(text)
    assert not reparsed.diagnostics
    assert reparsed.records == records


def test_sidecar_parse_and_ordinals():
    text = ("c1\tr1\tfirst passage\n"
            "c1\tr1\tsecond passage\n"
            "c1\tr2\tother ref\n")
    result = parse_context_sidecar(text)
    assert [c.ordinal for c in result.contexts] == [0, 1, 0]
    assert result.raw_count == 3
    assert result.unique_count == 3


def test_sidecar_spec_example_row():
    line = "3037877512\t3018691224\t...conflicting conclusions...\n"
    result = parse_context_sidecar(line)
    [ctx] = result.contexts
    assert (ctx.citing_id, ctx.cited_id) == ("3037877512", "3018691224")


def test_sidecar_empty():
    assert parse_context_sidecar("").contexts == []


def test_sidecar_malformed_line_skipped():
    result = parse_context_sidecar("only\ttwo\nc1\tr1\tgood one\n")
    assert result.unique_count == 1
    assert result.diagnostics[0].kind == "MalformedLine"


def test_sidecar_dedup_bookkeeping_38_raw_23_unique():
    # Table-1-style bookkeeping: 38 raw lines of which 23 distinct
    lines = [f"c{i}\tr{i % 4}\tpassage number {i}" for i in range(23)]
    lines += [lines[i % 23] for i in range(15)]  # 15 exact duplicates
    result = parse_context_sidecar("\n".join(lines) + "\n")
    assert result.raw_count == 38
    assert result.unique_count == 23
    assert len(result.contexts) == 23


def test_sidecar_round_trip():
    contexts = [CitationContext("c1", "r1", "text with\ttab", 0),
                CitationContext("c2", "r2", "plain", 0)]
    text = serialize_contexts(contexts)
    result = parse_context_sidecar(text)
    assert result.contexts[0].text == "text with tab"  # tab replaced at write time
    assert result.contexts[1] == contexts[1]


def test_assemble_corpus_drops_unresolved_citing():
    records = [Record(id="a", year=2020, refs=["x"])]
    contexts = [CitationContext("a", "x", "ok", 0),
                CitationContext("ghost", "x", "dropped", 0)]
    corpus, diags = assemble_corpus(records, contexts)
    assert len(corpus.contexts) == 1
    assert diags[0].kind == "UnresolvedCiting"


def test_coverage():
    records = [Record(id="a", year=2020, refs=["x"]),
               Record(id="b", year=2020, refs=["y"])]
    corpus, _ = assemble_corpus(records, [CitationContext("a", "x", "t", 0)])
    assert corpus.coverage == 0.5


def test_slice_by_month_partition():
    records = [Record(id=str(i), year=2020, month=m, refs=[])
               for i, m in enumerate([1, 1, 3, 8], start=1)]
    corpus, _ = assemble_corpus(records, [])
    slices, diags = slice_by_month(corpus, (2020, 1), (2020, 8))
    assert len(slices) == 8  # empty months included
    assert [s.label for s in slices][:3] == ["2020-JAN", "2020-FEB", "2020-MAR"]
    assert sum(len(s.record_ids) for s in slices) == 4
    assert not diags
    # each record appears exactly once
    all_ids = [rid for s in slices for rid in s.record_ids]
    assert sorted(all_ids) == ["1", "2", "3", "4"]


def test_slice_out_of_range_diagnostic():
    records = [Record(id="future", year=2021, month=1, refs=[])]
    corpus, _ = assemble_corpus(records, [])
    slices, diags = slice_by_month(corpus, (2020, 1), (2020, 12))
    assert all(not s.record_ids for s in slices)
    assert diags and diags[0].kind == "OutOfRange"


def test_missing_month_slices_as_december():
    rec = Record(id="1", year=2020, refs=[])
    assert rec.month_imputed
    assert rec.date_key() == (2020, 12)


def test_empty_corpus_slices_empty():
    corpus, _ = assemble_corpus([], [])
    slices, diags = slice_by_month(corpus, (2020, 1), (2020, 2))
    assert [s.record_ids for s in slices] == [[], []]


def test_month_helpers():
    assert month_label(2020, 2) == "2020-FEB"
    assert parse_month_arg("2020-06") == (2020, 6)
    assert parse_month_arg("2020-SEP") == (2020, 9)
    with pytest.raises(ValueError):
        parse_month_arg("not-a-month")
    assert months_between((2019, 11), (2020, 2)) == [
        (2019, 11), (2019, 12), (2020, 1), (2020, 2)]
