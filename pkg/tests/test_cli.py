import json

import pytest

from permchar.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_text(capsys):
    code, out, _ = run(capsys, "decompose", "--family", "s4", "--subgroup", "sylow2")
    assert code == 0
    assert out.strip() == "1a+2a"


def test_decompose_json_round_trip(capsys):
    code, out, _ = run(capsys, "decompose", "--family", "s4", "--subgroup", "sylow2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["decomposition"] == "1a+2a"
    assert payload["index"] == 3


def test_fsind_q8(capsys):
    code, out, _ = run(capsys, "fsind", "--family", "q8")
    assert code == 0
    assert "2a: degree 2 indicator -1" in out


def test_table_verb_round_trips(capsys):
    code, out, _ = run(capsys, "table", "--family", "s3")
    assert code == 0
    from permchar.tableio import parse_table

    T = parse_table(out)
    assert T.degrees == [1, 1, 2]


def test_real_classes_verb(capsys):
    code, out, _ = run(capsys, "real-classes", "--family", "agl1_27")
    assert code == 0
    assert "3 real classes" in out


def test_verify_pass_and_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "theorem-d", "--family", "c6")
    assert code == 0
    assert "[pass]" in out


def test_verify_json_and_text_agree(capsys):
    code1, out1, _ = run(capsys, "verify", "theorem-a", "--family", "s4", "--subgroup", "sylow2")
    code2, out2, _ = run(capsys, "verify", "theorem-a", "--family", "s4", "--subgroup", "sylow2", "--json")
    assert code1 == code2 == 0
    payload = json.loads(out2)
    assert payload[0]["pass"] is True


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    # missing required selector
    code, _, err = run(capsys, "decompose", "--family", "s4")
    assert code == 2
    assert "subgroup" in err


def test_unknown_family_is_an_error(capsys):
    code, _, err = run(capsys, "decompose", "--family", "nope", "--subgroup", "x")
    assert code in (1, 2)
    assert err


def test_group_file_input(tmp_path, capsys):
    from permchar import corpus

    path = tmp_path / "g.grp"
    corpus.save_group_file(path, corpus.build("s4").group, "s4copy")
    code, out, _ = run(capsys, "fsind", "--group-file", str(path))
    assert code == 0
    assert out.count("degree") == 5


def test_data_dir_override(tmp_path, capsys):
    # an empty data dir must break bundled-table loading loudly
    code, _, err = run(capsys, "decompose", "--family", "m11", "--subgroup", "s5",
                       "--data-dir", str(tmp_path))
    assert code in (1, 2)
    from permchar import corpus

    corpus.set_data_dir(None)


def test_verify_c3q16(capsys):
    code, out, _ = run(capsys, "verify", "c3q16", "--family", "c3q16")
    assert code == 0
