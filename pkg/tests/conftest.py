"""Printed data for the five worked examples, shared by the test modules."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Example:
    name: str
    initial: tuple[int, int, int, int]
    terms: tuple[int, ...]
    q: str
    u: str
    beta: str
    case: str
    flip: int
    curve: tuple[int, int, int, int, int]
    point: tuple[int, int]


EXAMPLES = [
    Example(
        "ex1", (1, 1, -1, 1),
        (1, 1, -1, 1, 2, -1, -3, -5, 7, -4, -23, 29, 59, 129, -314,
         -65, 1529, -3689, -8209, -16264),
        "0.0004654203923", "-0.09230562888", "0.310541358720",
        "NonidentityComponentCase", 1, (0, 0, 1, -1, 0), (0, 0),
    ),
    Example(
        "ex2", (1, 1, 1, -1),
        (1, 1, 1, -1, -2, -3, -1, 7, 11, 20, -19, -87, -191, -197, 1018,
         2681, 8191, -5841, -81289, -261080),
        "-0.001833413287", "0.02931619135", "0.2800581462",
        "ConnectedCase", 0, (0, 1, 1, 0, 0), (0, 0),
    ),
    Example(
        "ex3", (1, 1, 2, 1),
        (1, 1, 2, 1, -7, -16, -57, -113, 670, 3983, 23647, 140576, -833503,
         -14871471, -147165662, -2273917871, 11396432249, 808162720720,
         14252325989831, 503020937289311),
        "-0.0004429838967", "0.02529988312", "0.2380838117",
        "ConnectedCase", 0, (1, -1, 0, -1, 1), (1, 0),
    ),
    Example(
        "ex4", (1, 1, 1, 2),
        (1, 1, 1, 2, 1, -3, -7, -8, -25, -37, 47, 318, 559, 2023, 7039, -496,
         -90431, -314775, -1139599, -8007614),
        "-0.00006372107969", "0.02660268122", "0.1877002949",
        "ConnectedCase", 0, (1, 0, 0, -2, 1), (1, 0),
    ),
    Example(
        "ex5", (1, 2, 2, -2),
        (1, 2, 2, -2, -24, -100, -176, 1552, 28448, 248448, 433024,
         -47795200, -1682842624, -30121422848, 218738737152),
        "0.00002987174044", "0.0004951251683", "0.7304917812",
        "IdentityComponentCase", 1, (1, 1, 1, -416, 3009), (21, 53),
    ),
]

BY_NAME = {ex.name: ex for ex in EXAMPLES}


def example_ids(examples=EXAMPLES):
    return [ex.name for ex in examples]
