import pytest

from quartic_conics.cli import EXIT_DEGENERATE, EXIT_OK, EXIT_USAGE, SCHEMA, emit, main, parse


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_singular_smooth(capsys):
    code, out, _ = run(capsys, "singular", "--point", "1,0,0,0,0")
    assert code == EXIT_OK and "smooth" in out


def test_singular_on_cubic(capsys):
    code, out, _ = run(capsys, "singular", "--point", "1,0,-2,-2,2")
    assert code == EXIT_DEGENERATE and "Delta=0" in out


@pytest.mark.parametrize("argv", [
    ["singular", "--point", "0,0"],
    ["singular", "--point", "a,b,c,d,e"],
    ["bogus"],
    [],
    ["conics", "--point", "1,87,15,39,21", "--node", "11"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and "usage error" in err


def test_rational_coordinates(capsys):
    code, out, _ = run(capsys, "singular", "--point", "1/2,0,0,0,0")
    assert code == EXIT_OK and "[1,0,0,0,0]" in out


def test_conics_for_one_node(capsys):
    code, out, _ = run(capsys, "--format", "structured", "conics", "--point", "1,87,15,39,21", "--node", "1")
    doc = parse(out)
    assert code == EXIT_OK
    assert doc["result"]["count"] == 32 and doc["result"]["distinct_planes"] == 16
    assert doc["result"]["all_verified"]
    assert parse(emit(doc)) == doc


def test_conics_degenerate_point_named(capsys):
    code, _, err = run(capsys, "conics", "--point", "1,0,-2,1,3")
    assert code == EXIT_DEGENERATE and "q+C=0" in err


def test_galois(capsys):
    code, out, _ = run(capsys, "--format", "structured", "--seed", "7", "galois", "--point", "1,87,15,39,21")
    doc = parse(out)
    assert code == EXIT_OK and doc["result"]["rank"] == 10 and doc["seed"] == 7


def test_groups(capsys):
    code, out, _ = run(capsys, "--format", "structured", "groups")
    doc = parse(out)["result"]
    assert code == EXIT_OK
    assert (doc["gamma_order"], doc["omega_order"], doc["quotient_order"]) == (16, 11520, 720)


def test_monodromy_verify_tables(capsys):
    code, out, _ = run(capsys, "monodromy", "--verify-tables")
    assert code == EXIT_OK
    assert "150/150" in out and "512" in out and "1024" in out


def test_schema_mismatch_rejected():
    with pytest.raises(ValueError):
        parse('{"schema": "other/0"}')
    assert SCHEMA == "quartic-conics/1"
