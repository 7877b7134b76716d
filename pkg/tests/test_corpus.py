import json

from cyclic_linf import corpus
from cyclic_linf.fixtures import build_dgla_corpus, data_path, dgla_fixtures
from cyclic_linf.linf import LInfinityStructure, check_structure


def test_shipped_data_matches_builders():
    files = corpus.build_files()
    shipped = sorted(p.name for p in data_path("").iterdir() if p.suffix == ".json")
    assert shipped == sorted(files)
    for name, obj in files.items():
        assert json.loads(data_path(name).read_text()) == json.loads(corpus.dumps(obj)), name


def test_check_mode(tmp_path):
    assert corpus.main(["--check"]) == 0
    assert corpus.main(["--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == sorted(corpus.build_files())
    (tmp_path / "germs.json").write_text("[]")
    assert corpus.main(["--check", "--out", str(tmp_path)]) == 1


def test_fixtures_are_valid():
    loaded = dgla_fixtures()
    assert sorted(loaded) == sorted(build_dgla_corpus())
    for name, L in corpus.load_structures().items():
        assert check_structure(L)[0].ok, name


def test_corrupted_fixture_is_invalid():
    L = LInfinityStructure.from_json(corpus.load_json("corrupt_aff1_uv_bad.json"))
    assert not check_structure(L)[0].ok
