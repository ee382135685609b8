from icx.tools.import_files import import_icx, import_yaml
from icx.zfunction import ZFunction, ZSet


def test_import_multiple_files(tmp_path_factory):
    dir_path = tmp_path_factory.mktemp("data")

    (dir_path / "line.icx").write_text("dim 1\nfn\n0 : 1\n1 : 0\n2 : 1\n")

    nested = dir_path / "sets"
    nested.mkdir()
    (nested / "pair.icx").write_text("dim 2\nset\n0 0\n1 1\n")

    (dir_path / "notes.txt").write_text("not an instance\n")

    imported = import_icx(dir_path)

    assert [path.name for path, _ in imported] == ["line.icx", "pair.icx"]
    assert isinstance(imported[0][1], ZFunction)
    assert isinstance(imported[1][1], ZSet)


def test_import_single_file(tmp_path):
    path = tmp_path / "line.icx"
    path.write_text("dim 1\nfn\n0 : 1\n1 : 0\n")

    imported = import_icx(path)

    assert len(imported) == 1
    assert imported[0][1].get((1,)) == 0


def test_import_in_batches(tmp_path):
    for k in range(3):
        (tmp_path / f"f{k}.icx").write_text(f"dim 1\nfn\n0 : {k}\n")

    imported = import_icx(tmp_path, batch_size=2)

    assert [f.get((0,)) for _, f in imported] == [0, 1, 2]


def test_import_nothing(tmp_path, caplog):
    assert import_icx(tmp_path) == []
    assert "Didn't find any files to import" in caplog.text


def test_import_yaml_documents(tmp_path):
    manifest = """
NAME: first
FILE: first.icx
KIND: fn
is_ic: true
---
NAME: second
FILE: second.icx
KIND: set
is_ic: false
witness_point: "1/2 0"
"""

    (tmp_path / "manifest.yaml").write_text(manifest)

    records = import_yaml(tmp_path)

    assert [r.name for r in records] == ["first", "second"]
    assert records[1].expected == {"is_ic": False, "witness_point": "1/2 0"}


def test_import_yaml_validate_only(tmp_path):
    (tmp_path / "manifest.yaml").write_text("NAME: first\nFILE: first.icx\nKIND: fn\n")

    assert import_yaml(tmp_path / "manifest.yaml", validate_only=True) == []
