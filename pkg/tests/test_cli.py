import numpy as np
import pytest

from borderedsd.bordered import build_selfdual, parse_params
from borderedsd.cli import MatrixFile, InputError, format_report, main, parse_report, parse_x0
from borderedsd.weights import min_distance_bz

SEED54 = ["--ring", "F2", "--n", "13", "--a", "0111000101101", "--b", "1101110000100", "--c", "0101111110011", "--xi", "001101"]
C68_4 = ["--ring", "F2u", "--n", "8", "--lambda", "1", "--mu", "3", "--a", "01230200", "--b", "13010312",
               "--c", "22003002", "--xi", "102232"]
C68_1 = ["--ring", "F2u", "--n", "8", "--a", "22120031", "--b", "02331100", "--c", "33331213", "--xi", "101132"]
C82_1 = ["--ring", "F2", "--n", "20", "--a", "00110011100000000110", "--b", "00100110011101010011",
         "--c", "00010010010001000001", "--xi", "101010"]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def build(capsys, tmp_path, flags, name):
    path = tmp_path / name
    code, _, err = run(capsys, "build", *flags, "-o", path)
    assert code == 0, err
    return path


def test_build_length_54_seed(capsys, tmp_path):
    path = build(capsys, tmp_path, SEED54, "s54.txt")
    mf = MatrixFile.read(path)
    assert (mf.length, mf.k) == (54, 27)
    assert any(c.startswith("params:") for c in mf.comments)


def test_build_c68_4(capsys, tmp_path):
    mf = MatrixFile.read(build(capsys, tmp_path, C68_4, "c68.txt"))
    assert (mf.length, mf.k) == (68, 34)


def test_build_failure_names_condition(capsys):
    flags = C68_4[:-1] + ["102233"]
    code, out, err = run(capsys, "build", *flags)
    assert code == 1
    assert "cond_xi_square: FAIL" in err
    assert out == ""


def test_build_from_params_file(capsys, tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("# seed\nF2 13 1 1 0111000101101 1101110000100 0101111110011 001101  # comment\n")
    code, out, _ = run(capsys, "build", p)
    assert code == 0
    assert MatrixFile.parse(out).k == 27


def test_roundtrip_matches_in_process(capsys, tmp_path):
    path = build(capsys, tmp_path, C68_4, "c68.txt")
    params = parse_params("F2u 8 1 3 01230200 13010312 22003002 102232")
    assert MatrixFile.read(path).code() == build_selfdual(params)
    code, out, _ = run(capsys, "distance", path, "--engine", "bz")
    rep = parse_report(out)
    assert code == 0
    assert int(rep["d"]) == min_distance_bz(build_selfdual(params)) == 12
    code, out, _ = run(capsys, "check", path)
    assert parse_report(out)["self_dual"] == "true"


def test_engines_agree_on_c68_1(capsys, tmp_path):
    path = build(capsys, tmp_path, C68_1, "c68_1.txt")
    ds = []
    for engine in ("exhaustive", "bz"):
        code, out, _ = run(capsys, "distance", path, "--engine", engine)
        assert code == 0
        ds.append(int(parse_report(out)["d"]))
    assert ds == [12, 12]


def test_census_classifies_c82_1(capsys, tmp_path):
    path = build(capsys, tmp_path, C82_1, "c82.txt")
    code, out, _ = run(capsys, "census", path, "--wmax", "18")
    rep = parse_report(out)
    assert code == 0
    assert (rep["family"], rep["alpha"], rep["beta"]) == ("2", "-738", "18")
    assert "14:1804" in rep["census"]


def test_threads_do_not_change_numbers(capsys, tmp_path):
    path = build(capsys, tmp_path, C82_1, "c82.txt")
    reps = []
    for t in ("1", "3"):
        _, out, _ = run(capsys, "census", path, "--wmax", "16", "--threads", t)
        rep = parse_report(out)
        rep.pop("time")
        reps.append(rep)
    assert reps[0] == reps[1]


def test_check_non_self_dual_exits_zero(capsys, tmp_path):
    g = np.random.default_rng(1)
    rows = ["".join(map(str, r)) for r in g.integers(0, 2, (5, 10))]
    path = tmp_path / "rand.txt"
    path.write_text("10 5 F2\n" + "\n".join(rows) + "\n")
    code, out, _ = run(capsys, "check", path)
    assert code == 0
    assert parse_report(out)["self_dual"] == "false"


def test_f2u_matrix_file_is_gray_mapped(capsys, tmp_path):
    path = tmp_path / "r.txt"
    # the R-span of (1, 1) and its Gray image {0000, 0011, 1111, 1100}
    path.write_text("# over F2+uF2\n2 1 F2u\n11\n")
    code, out, _ = run(capsys, "check", path)
    rep = parse_report(out)
    assert (rep["length"], rep["k"], rep["self_dual"]) == ("4", "2", "true")


def test_neighbour_command(capsys, tmp_path):
    seed = build(capsys, tmp_path, SEED54, "s54.txt")
    out_path = tmp_path / "n54.txt"
    code, _, _ = run(capsys, "neighbour", seed, "000001100101001000111101101", "-o", out_path)
    assert code == 0
    code, out, _ = run(capsys, "census", out_path)
    rep = parse_report(out)
    assert (rep["d"], rep["family"], rep["alpha"]) == ("10", "1", "23")
    # the same x0 in hex
    hex_x0 = hex(int("000001100101001000111101101", 2))
    code, out2, _ = run(capsys, "neighbour", seed, hex_x0)
    assert MatrixFile.parse(out2).rows == MatrixFile.read(out_path).rows


def test_parse_x0():
    assert parse_x0("0x3", 4) == [0, 0, 1, 1]
    assert parse_x0("0110", 4) == [0, 1, 1, 0]
    with pytest.raises(InputError):
        parse_x0("0x1F", 4)
    with pytest.raises(InputError):
        parse_x0("012", 3)


def test_search_command(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("ring = F2\nn = 3\nmin_d = 2\nmax_trials = 200\n")
    results = tmp_path / "found.txt"
    code, out, err = run(capsys, "search", cfg, "--seed", "5", "--out", results)
    assert code == 0
    lines = out.splitlines()
    assert lines and lines == results.read_text().splitlines()
    assert "trials=200" in err
    for line in lines:
        parse_params(line.split("#")[0])
    code, out_again, _ = run(capsys, "search", cfg, "--seed", "5")
    assert out_again == out


def test_neighbour_search_command(capsys, tmp_path):
    build(capsys, tmp_path, SEED54, "s54.txt")
    cfg = tmp_path / "nb.cfg"
    cfg.write_text("mode = neighbour\nseed_code = s54.txt\nmin_d = 8\nmax_trials = 5\n")
    code, out, err = run(capsys, "search", cfg)
    assert code == 0
    assert "trials=5" in err
    assert all(line.startswith("x0=") for line in out.splitlines())


def test_verify_catalog_command(capsys):
    code, out, _ = run(capsys, "verify-catalog", "--id", "C54.1", "--id", "C68.14")
    assert code == 0
    assert out.count("PASS") == 2
    assert "2/2 passed" in out
    code, _, err = run(capsys, "verify-catalog", "--id", "nope")
    assert code == 2


@pytest.mark.parametrize(
    "text",
    ["", "54 27\n", "4 2 F2\n1100\n", "4 1 F2\n110\n", "4 1 F2\n1120\n", "4 1 Z4\n1100\n"],
)
def test_bad_matrix_files_exit_2(capsys, tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    code, _, err = run(capsys, "check", path)
    assert code == 2
    assert err.startswith("error:")


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "check", tmp_path / "missing.txt")[0] == 2
    assert run(capsys, "build", "--ring", "F2", "--n", "3")[0] == 2
    assert run(capsys, "build", *SEED54[:-1], "0011")[0] == 2
    assert run(capsys, "census", tmp_path / "missing.txt", "--threads", "0")[0] == 2
    path = tmp_path / "m.txt"
    path.write_text("10 1 F2\n1100000000\n")
    assert run(capsys, "census", path)[0] == 2  # no default depth for length 10
    with pytest.raises(SystemExit) as exc:
        main(["distance", str(path), "--engine", "magic"])
    assert exc.value.code == 2


def test_report_format_is_stable():
    text = format_report({"d": 4, "source": "x", "census": {6: 2, 4: 1}, "self_dual": True, "beta": None})
    assert text.splitlines() == ["source: x", "self_dual: true", "d: 4", "census: 4:1 6:2", "beta: -"]
    with pytest.raises(KeyError):
        format_report({"colour": 1})
