import pytest

import witness_triangles as wt

SOLUTION = [(0, 0), (1, 0), (2, 0), (2, 1)]


def two_squares():
    return wt.Puzzle(1, 2, (0, 0), (2, 1), [((0, 0), 1), ((1, 0), 2)])


def test_puzzle_round_trip():
    p = two_squares()
    assert p.rows == 1 and p.cols == 2
    assert p.constraints == [((0, 0), 1), ((1, 0), 2)]
    assert wt.Puzzle.from_json(p.to_json()) == p
    assert p.neighbors((1, 0)) == [(1, 1), (2, 0), (0, 0)]


def test_invalid_puzzle_raises_value_error():
    with pytest.raises(ValueError):
        wt.Puzzle(2, 2, (0, 0), (1, 1))
    with pytest.raises(wt.FormatError):
        wt.Puzzle.from_json("{")


def test_oracle():
    p = two_squares()
    assert wt.solutions(p) == [SOLUTION]
    labels = wt.labeled_examples(p)
    assert len(labels) == 9
    assert sum(1 for _, bad in labels if bad) == 6
    assert wt.completable(p, [(0, 0), (1, 0)])
    assert not wt.completable(p, [(0, 0), (0, 1)])


@pytest.mark.parametrize(
    "predicate,mode,expansions",
    [("off", "off", 6), ("baseline", "sort", 4), ("baseline", "prune", 4), ("learned", "prune", 4)],
)
def test_solve_two_squares(predicate, mode, expansions):
    r = wt.solve(two_squares(), predicate=None if predicate == "off" else predicate, mode=mode)
    assert r["solved"]
    assert r["solution"] == SOLUTION
    assert r["termination"] == "solved"
    assert r["expansions"] == expansions


def test_untrusted_predicate_needs_override_to_prune():
    prog = wt.parse_predicate(str(wt.learned_predicate()), "candidate")
    assert not prog.trusted
    assert prog == wt.learned_predicate()
    with pytest.raises(ValueError):
        wt.solve(two_squares(), predicate=prog, mode="prune")
    assert wt.solve(two_squares(), predicate=prog)["solved"]  # defaults to sort
    r = wt.solve(two_squares(), predicate=prog, mode="prune", unsafe_prune=True)
    assert r["solved"] and not r["complete"]


def test_predicate_errors():
    with pytest.raises(wt.PredicateError, match="unknown atom"):
        wt.parse_predicate("f(A,B) :- nope(A).")


def test_generators_and_verify():
    puzzles = [wt.gen_random_triangles(3, 3, s) for s in range(5)]
    for s in range(5):
        p, witness = wt.gen_from_path(3, 3, s)
        assert p.is_solution(witness)
        puzzles.append(p)
    assert wt.gen_random_triangles(3, 3, 1) == puzzles[1]
    for p in puzzles:
        assert wt.solve(p)["solved"]
    report = wt.verify(wt.learned_predicate(), puzzles)
    assert report["checked"] > 0 and report["false_positives"] == 0

    broken = wt.parse_predicate(
        "f(A,B) :- square(B,D,C), path(A,E), count(E,C,F), notAdjacent(A,B), two(D), one(F).")
    p = wt.Puzzle(2, 2, (0, 0), (2, 2), [((0, 0), 2)])
    assert broken.evaluate(p, [(0, 0), (1, 0), (2, 0)])
    assert wt.verify(broken, [p])["false_positives"] > 0


def test_ilp_files():
    files = wt.ilp_files(two_squares())
    assert files["positives"] == 6 and files["negatives"] == 3
    assert "max_vars(7)." in files["bias"]
    assert files["exs"].startswith("neg(f(p0)).")
