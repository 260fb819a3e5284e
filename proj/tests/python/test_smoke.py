import pytest

import pygcsa

ROWS = ["ACGTACGGTCAT", "ACGTTCGGTCAT"]


@pytest.fixture(scope="module")
def index():
    return pygcsa.Index.from_alignment(ROWS, context_length=2, sample_rate=4)


def test_find_and_locate(index):
    sp, ep = index.find("GTACGG")
    assert sp <= ep
    assert index.locate((sp, ep)) == [3]
    assert index.locate_pattern("GTTCGG") == [3]
    assert index.count("GGGG") == 0
    # A recombination of the two rows is a path of the graph.
    assert index.count("ACGTTCGG") == 1


def test_stats(index):
    s = index.stats()
    assert s["nodes"] == index.node_count
    assert s["bwt_length"] <= s["bwt_bound"]
    assert sum(s["components"].values()) == s["total_bytes"]


def test_round_trip(index, tmp_path):
    data = index.to_bytes()
    assert pygcsa.Index.from_bytes(data) == index
    path = str(tmp_path / "x.gcsa")
    index.save(path)
    loaded = pygcsa.Index.load(path)
    assert loaded.to_bytes() == data
    assert loaded.locate_pattern("CGGT") == index.locate_pattern("CGGT")


def test_matching(index):
    results = index.match([("fwd", "GTACGG"), ("rc", pygcsa.reverse_complement("CGTTCGGT")), ("none", "GGGGGG")])
    assert results[0]["hits"][0]["strand"] == "+"
    assert results[1]["hits"][0]["strand"] == "-"
    assert results[2]["hits"] == []
    distance, ranges = index.approximate_find("GTAGGG", 1)
    assert distance == 1
    assert ranges


def test_errors(tmp_path):
    with pytest.raises(pygcsa.InputError):
        pygcsa.Index.from_alignment(["ACGT", "AC"])
    with pytest.raises(pygcsa.FormatError):
        pygcsa.Index.from_bytes(b"not an index")
    with pytest.raises(pygcsa.GcsaError):
        pygcsa.reverse_complement("AXT")


def test_simulate():
    records = pygcsa.simulate(n=100, p=0.0, trials=2)
    assert records[0]["mean_nodes"] == 102
    assert records[-1]["sorted_fraction"] == 1.0
