import json
import threading

from rkpairs.cache import FactorCache, decode, encode
from rkpairs.zarith import IntFactorization, factor_int, factor_power_minus_one


def test_roundtrip(tmp_path):
    for f in (factor_int(12), factor_power_minus_one(13, 22), IntFactorization(10**40 + 7, (), 10**40 + 7, 10**6, 1)):
        assert decode(encode(f)) == f


def test_last_entry_wins_and_bad_lines(tmp_path):
    path = tmp_path / "c.ndjson"
    partial = IntFactorization(2**64 - 1, ((3, 1),), (2**64 - 1) // 3, 10, 1)
    full = factor_int(2**64 - 1)
    path.write_text(encode(partial) + "\n" + "{not json\n\n" + encode(full) + "\n" + '{"n": "5"')
    c = FactorCache(path)
    assert c.get(2**64 - 1) == full and c.get(2**64 - 1).complete
    assert len(c) == 1


def test_provider_appends_and_reuses(tmp_path):
    path = tmp_path / "sub" / "c.ndjson"
    c = FactorCache(path)
    f = c.provider(13, 22)
    assert f.complete and path.exists()
    lines = path.read_text().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["n"] == str(13**22 - 1)
    assert c.provider(13, 22) == f
    assert len(path.read_text().splitlines()) == 1
    assert FactorCache(path).get(13**22 - 1) == f


def test_concurrent_writes_are_whole_lines(tmp_path):
    path = tmp_path / "c.ndjson"
    c = FactorCache(path)
    ts = [threading.Thread(target=c.provider, args=(2, m)) for m in range(20, 40)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert len(FactorCache(path)) == 20
    assert all(decode(line) for line in path.read_text().splitlines())
