"""Small named quivers used throughout the tests and demos."""
from __future__ import annotations

from .qvr import parse_qvr

EX1_QVR = """\
quiver EX1
vertex a b c d f g
arrow al a b
arrow be b c
arrow ga c d
arrow ze c f
arrow la d b
arrow th d f
arrow ka f g
rel be ga
rel ga la
rel la be
rel ze ka
"""

A2_QVR = """\
quiver A2
vertex a b
arrow al a b
"""

KR_QVR = """\
quiver KR
vertex a b
arrow al a b
arrow be a b
"""

EX2_QVR = """\
quiver EX2
vertex c1 c2 b1 b2 x a1 a2
arrow g1 c1 b1
arrow g2 c2 b2
arrow b1x b1 x
arrow b2x b2 x
arrow xa1 x a1
arrow xa2 x a2
rel g1 b1x
rel g2 b2x
rel b1x xa2
rel b2x xa1
"""

SOURCES = {"EX1": EX1_QVR, "A2": A2_QVR, "KR": KR_QVR, "EX2": EX2_QVR}


def load(name: str):
    return parse_qvr(SOURCES[name])


def ex1():
    return load("EX1")


def a2():
    return load("A2")


def kr():
    return load("KR")


def ex2():
    return load("EX2")
