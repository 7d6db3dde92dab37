import random

from leavitt import Field, parse_element
from leavitt.randgen import random_graph

QQ = Field(0)
F2 = Field(2)
F3 = Field(3)
FIELDS = [QQ, F2, F3]


def el(g, text, field=QQ):
    return parse_element(text, g, field)


def graph_from_seed(seed, acyclic=True, max_vertices=6):
    return random_graph(random.Random(seed), max_vertices=max_vertices, acyclic=acyclic)
