import io

import pytest

from citeconc.corpus import load_corpus

ARTICLES_TSV = """id\tpub_year\tfield\tregion\tjournal_id\tauthor_ids
A\t2000\tPhys\tNorthAmerica\tJ1\ta1
B\t2000\tBio\tEurope\tJ2\ta2;a3
C\t2001\tPhys\tNorthAmerica\tJ1\ta1;a4
D\t2002\tBio\tAsia\tJ2\ta5
E\t2003\tPhys\tEurope\tJ1\ta6
"""

# C->A is a self-citation (shared a1). Last three rows are dirty on purpose:
# duplicate edge, dangling endpoint, citation to the future.
EDGES_TSV = """citing_id\tcited_id
C\tA
D\tA
D\tB
E\tB
E\tC
D\tA
A\tX
A\tC
"""


def make_corpus(articles: str = ARTICLES_TSV, edges: str = EDGES_TSV, span=(2000, 2004)):
    return load_corpus(io.StringIO(articles), io.StringIO(edges), span)


@pytest.fixture
def fixture_corpus():
    return make_corpus()
