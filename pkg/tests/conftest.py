import pytest

from jicert import (
    alternating,
    central_product,
    cyclic,
    dihedral,
    direct_product,
    quaternion8,
    sl2,
    symmetric,
    wreath_product,
)


def _build_corpus():
    c2, c3 = cyclic(2), cyclic(3)
    v4 = direct_product(c2, c2)
    return {
        "C1": cyclic(1),
        "C2": c2,
        "C3": c3,
        "C4": cyclic(4),
        "C6": cyclic(6),
        "C8": cyclic(8),
        "C12": cyclic(12),
        "V4": v4,
        "C2^3": direct_product(v4, c2),
        "C2^4": direct_product(v4, v4),
        "C3^2": direct_product(c3, c3),
        "D4": dihedral(4),
        "D5": dihedral(5),
        "D6": dihedral(6),
        "D8": dihedral(8),
        "Q8": quaternion8(),
        "S3": symmetric(3),
        "S4": symmetric(4),
        "S5": symmetric(5),
        "S6": symmetric(6),
        "A4": alternating(4),
        "A5": alternating(5),
        "A6": alternating(6),
        "SL(2,3)": sl2(3),
        "SL(2,5)": sl2(5),
        "S3wrS3": wreath_product(symmetric(3), symmetric(3)),
        "C2wrS5": wreath_product(c2, symmetric(5)),
        "C2xS3": direct_product(c2, symmetric(3)),
        "S3xS3": direct_product(symmetric(3), symmetric(3)),
        "C2xA4": direct_product(c2, alternating(4)),
        "C2xC2xS3": direct_product(v4, symmetric(3)),
        "D4oC4": central_product(dihedral(4), cyclic(4)),
        "Q8oC4": central_product(quaternion8(), cyclic(4)),
    }


_CORPUS = None


def corpus_groups():
    """The shared test corpus, built once per process."""
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = _build_corpus()
    return _CORPUS


@pytest.fixture(scope="session")
def corpus():
    return corpus_groups()


@pytest.fixture(scope="session")
def small_corpus():
    """Corpus members small enough for quadratic brute-force comparisons."""
    return {name: g for name, g in corpus_groups().items() if g.order <= 400}
