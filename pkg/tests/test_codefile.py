import pytest

from tannercert.codefile import format_code_file, parse_code_file
from tannercert.codes import LocalCode
from tannercert.errors import InputError
from tannercert.generate import random_regular_code

SIX_CYCLE = """\
# three variables on a cycle of equality checks
3 3
0 : 0 1
1 : 1 2
2 : 2 0
code 0
parity
code 1
parity
code 2
parity
"""

MIXED = """\
4 2
0 : 0 1 2
1 : 1 2 3
code 0
000
111
code 1
parity
"""


def test_parse_six_cycle():
    code = parse_code_file(SIX_CYCLE)
    assert code.n == 3
    assert code.graph.num_checks == 3
    assert code.d_star == 2
    assert code.is_codeword((1, 1, 1))


def test_parse_explicit_codeword_block():
    code = parse_code_file(MIXED)
    assert code.local_codes[0] == LocalCode.repetition(3)
    assert code.local_codes[1] == LocalCode.parity(3)
    assert code.d_star == 2


def test_roundtrip_through_format():
    code = parse_code_file(MIXED)
    again = parse_code_file(format_code_file(code))
    assert again.graph.check_neighbors == code.graph.check_neighbors
    assert again.local_codes == code.local_codes


def test_parity_blocks_roundtrip_as_directive():
    text = format_code_file(parse_code_file(SIX_CYCLE))
    assert text.count("parity") == 3


def test_generated_code_roundtrip():
    code = random_regular_code(9, 2, 3, seed=5, local="repetition")
    text = format_code_file(code)
    again = parse_code_file(text)
    assert format_code_file(again) == text


@pytest.mark.parametrize("bad,msg", [
    ("", "empty"),
    ("1 1\n0 : 0 0\ncode 0\nparity\n", "repeats"),
    ("2 1\n0 : 0 1\ncode 0\n010\n", "length"),
    ("2 1\n0 : 0 1\ncode 1\nparity\n", "expected 'code 0'"),
    ("2 1\n0 : 0 1\ncode 0\n00\n11\nextra stuff\n", "bad codeword"),
    ("2 2\n0 : 0 1\n0 : 0 1\ncode 0\nparity\ncode 1\nparity\n", "duplicate"),
])
def test_rejects_malformed(bad, msg):
    with pytest.raises(InputError, match=msg):
        parse_code_file(bad)


def test_rejects_trailing_content():
    with pytest.raises(InputError, match="trailing"):
        parse_code_file(SIX_CYCLE + "\nleftover\n")
