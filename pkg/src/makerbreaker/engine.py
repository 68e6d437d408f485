"""Maker-Breaker game state machine.

Boards are either the edge set or the vertex set of a host graph.  Maker
claims ``a`` elements per turn, Breaker ``b``; the final turn of the board may
be short.  Maker's win is detected after every individual claim, so witnesses
always reflect the earliest winning prefix, and all winning predicates are
monotone in Maker's claim set.  A strategy that cannot (or will not) produce a
legal batch forfeits; the forfeit convention applies to both players.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import is_k_colorable
from .connectivity import edge_connectivity
from .errors import DomainError, IllegalMoveError
from .graphs import (
    Graph,
    OddCycleWitness,
    find_odd_cycle,
    induced_subgraph,
    is_connected,
)

MAKER = "maker"
BREAKER = "breaker"

EDGES = "edges"
VERTICES = "vertices"

_EDGE_KINDS = {"odd-cycle", "non-k-colorable", "spanning-connected", "k-edge-connected"}
_VERTEX_KINDS = {"odd-cycle", "non-k-colorable", "aux-connect"}


@dataclass(frozen=True)
class WinPredicate:
    """Monotone winning condition evaluated on Maker's claims."""

    kind: str
    k: int | None = None
    anchor: frozenset | None = None

    def __post_init__(self):
        if self.kind in ("non-k-colorable", "k-edge-connected"):
            if self.k is None or self.k < 1:
                raise DomainError(f"{self.kind} needs a positive k")
        if self.kind == "aux-connect" and self.anchor is None:
            raise DomainError("aux-connect needs an anchor vertex set")

    def token(self) -> str:
        if self.kind == "non-k-colorable":
            return f"non-{self.k}-colorable"
        if self.kind == "k-edge-connected":
            return f"{self.k}-edge-connected"
        if self.kind == "aux-connect":
            return "aux-connect " + ",".join(str(v) for v in sorted(self.anchor))
        return self.kind

    @classmethod
    def from_token(cls, token: str) -> "WinPredicate":
        token = token.strip()
        if token == "odd-cycle":
            return cls("odd-cycle")
        if token == "spanning-connected":
            return cls("spanning-connected")
        if token.startswith("non-") and token.endswith("-colorable"):
            return cls("non-k-colorable", k=int(token[4:-10]))
        if token.endswith("-edge-connected"):
            return cls("k-edge-connected", k=int(token[: -len("-edge-connected")]))
        if token.startswith("aux-connect"):
            rest = token[len("aux-connect") :].strip()
            anchor = frozenset(int(x) for x in rest.split(",") if x)
            return cls("aux-connect", anchor=anchor)
        raise DomainError(f"unknown objective token: {token!r}")


@dataclass(frozen=True)
class GameSpec:
    host: Graph
    board_kind: str
    objective: WinPredicate
    maker_bias: int = 1
    breaker_bias: int = 1
    first: str = MAKER

    def __post_init__(self):
        if self.board_kind not in (EDGES, VERTICES):
            raise DomainError(f"unknown board kind {self.board_kind!r}")
        if self.maker_bias < 1 or self.breaker_bias < 1:
            raise DomainError("biases must be positive")
        if self.first not in (MAKER, BREAKER):
            raise DomainError(f"unknown first player {self.first!r}")
        allowed = _EDGE_KINDS if self.board_kind == EDGES else _VERTEX_KINDS
        if self.objective.kind not in allowed:
            raise DomainError(
                f"objective {self.objective.kind!r} is not playable on {self.board_kind}"
            )

    def board(self) -> tuple:
        if self.board_kind == EDGES:
            return tuple(sorted(self.host.edges))
        return tuple(range(self.host.n))

    def bias_of(self, player: str) -> int:
        return self.maker_bias if player == MAKER else self.breaker_bias


@dataclass(frozen=True)
class Position:
    maker: frozenset
    breaker: frozenset
    to_move: str
    log: tuple = ()

    @classmethod
    def initial(cls, spec: GameSpec) -> "Position":
        return cls(maker=frozenset(), breaker=frozenset(), to_move=spec.first)

    def claimed(self) -> frozenset:
        return self.maker | self.breaker


@dataclass(frozen=True)
class ClaimSetWitness:
    """Certificate made of claimed elements plus the property they exhibit."""

    elements: tuple
    property: str
    k: int | None = None


@dataclass(frozen=True)
class EvalResult:
    status: str  # "maker-won" | "undecided" | "board-exhausted"
    witness: object = None


@dataclass(frozen=True)
class GameResult:
    winner: str
    witness: object
    rounds: int
    position: Position
    reason: str  # "objective" | "exhausted" | "forfeit"
    forfeit: bool = False
    forfeited_by: str | None = None


def legal_moves(spec: GameSpec, pos: Position) -> list:
    board = set(spec.board())
    if pos.maker & pos.breaker:
        raise DomainError("maker and breaker claims overlap")
    if not pos.maker <= board or not pos.breaker <= board:
        raise DomainError("claims outside the board")
    return sorted(board - pos.maker - pos.breaker)


def _apply(spec, pos, player, elements, *, allow_short=False) -> Position:
    if player != pos.to_move:
        raise IllegalMoveError(f"it is {pos.to_move}'s turn, not {player}'s")
    elements = tuple(elements)
    board = set(spec.board())
    claimed = pos.claimed()
    unclaimed = len(board) - len(claimed)
    need = min(spec.bias_of(player), unclaimed)
    if len(set(elements)) != len(elements):
        dup = next(e for e in elements if elements.count(e) > 1)
        raise IllegalMoveError(f"duplicate element {dup!r} in one turn", element=dup)
    if len(elements) != need and not (allow_short and 0 < len(elements) < need):
        raise IllegalMoveError(
            f"{player} must claim exactly {need} element(s), got {len(elements)}"
        )
    for el in elements:
        if el not in board:
            raise IllegalMoveError(f"element {el!r} is not on the board", element=el)
        if el in claimed:
            raise IllegalMoveError(f"element {el!r} is already claimed", element=el)
    new_maker = pos.maker | set(elements) if player == MAKER else pos.maker
    new_breaker = pos.breaker | set(elements) if player == BREAKER else pos.breaker
    return Position(
        maker=frozenset(new_maker),
        breaker=frozenset(new_breaker),
        to_move=BREAKER if player == MAKER else MAKER,
        log=pos.log + ((player, elements),),
    )


def apply_moves(spec: GameSpec, pos: Position, player: str, elements) -> Position:
    return _apply(spec, pos, player, elements)


def _maker_graph(spec: GameSpec, maker_claims) -> Graph:
    return Graph(spec.host.n, maker_claims)


def _triangle(g: Graph):
    for u, v in sorted(g.edges):
        common = g.neighbors(u) & g.neighbors(v)
        if common:
            return (u, v, min(common))
    return None


def maker_win_witness(spec: GameSpec, maker_claims):
    """The witness if Maker's claims satisfy the objective, else None."""
    obj = spec.objective
    if spec.board_kind == EDGES:
        claimed = _maker_graph(spec, maker_claims)
        if obj.kind == "odd-cycle":
            res = find_odd_cycle(claimed)
            return res if isinstance(res, OddCycleWitness) else None
        if obj.kind == "non-k-colorable":
            if is_k_colorable(claimed, obj.k) is None:
                return ClaimSetWitness(tuple(sorted(maker_claims)), "non-k-colorable", obj.k)
            return None
        if obj.kind == "spanning-connected":
            if spec.host.n >= 1 and is_connected(claimed):
                return ClaimSetWitness(tuple(sorted(maker_claims)), "spanning-connected")
            return None
        if obj.kind == "k-edge-connected":
            if spec.host.n < 2 or not is_connected(claimed):
                return None
            if min(claimed.degree(v) for v in range(claimed.n)) < obj.k:
                return None
            if edge_connectivity(claimed) >= obj.k:
                return ClaimSetWitness(
                    tuple(sorted(maker_claims)), "k-edge-connected", obj.k
                )
            return None
    else:
        claims = frozenset(maker_claims)
        if obj.kind == "odd-cycle":
            sub, to_parent = induced_subgraph(spec.host, claims)
            res = find_odd_cycle(sub)
            return res.relabeled(to_parent) if isinstance(res, OddCycleWitness) else None
        if obj.kind == "non-k-colorable":
            sub, _ = induced_subgraph(spec.host, claims)
            if is_k_colorable(sub, obj.k) is None:
                return ClaimSetWitness(tuple(sorted(claims)), "non-k-colorable", obj.k)
            return None
        if obj.kind == "aux-connect":
            union = claims | obj.anchor
            if not union:
                return None
            sub, to_parent = induced_subgraph(spec.host, union)
            if is_connected(sub):
                return ClaimSetWitness(tuple(sorted(union)), "aux-connected")
            tri = _triangle(sub)
            if tri is not None:
                return OddCycleWitness(tuple(to_parent[v] for v in tri))
            return None
    raise DomainError(f"unhandled objective {obj.kind!r}")


def evaluate(spec: GameSpec, pos: Position) -> EvalResult:
    witness = maker_win_witness(spec, pos.maker)
    if witness is not None:
        return EvalResult("maker-won", witness)
    if len(pos.claimed()) == len(spec.board()):
        return EvalResult("board-exhausted")
    return EvalResult("undecided")


class Strategy:
    """Decision procedure owned by one player for one game.

    ``reset`` is called by ``play`` before the first move with the game spec
    and a seed; strategies derive all their randomness from it.  ``propose``
    returns the exact batch for this turn, or None to forfeit deliberately.
    ``position_pure`` marks strategies whose proposals depend only on the
    visible position (no history), which the verifier exploits for memoization.
    """

    ident = "strategy"
    position_pure = False

    def reset(self, spec: GameSpec, seed: int):
        pass

    def propose(self, spec: GameSpec, pos: Position):
        raise NotImplementedError


def play(spec: GameSpec, maker: Strategy, breaker: Strategy, seed: int = 0) -> GameResult:
    """Run one game to completion; deterministic given the seed."""
    maker.reset(spec, 2 * seed)
    breaker.reset(spec, 2 * seed + 1)
    pos = Position.initial(spec)
    board = spec.board()
    rounds = 0
    while True:
        unclaimed = len(board) - len(pos.claimed())
        if unclaimed == 0:
            final = evaluate(spec, pos)
            if final.status == "maker-won":
                return GameResult(MAKER, final.witness, rounds, pos, "objective")
            return GameResult(BREAKER, None, rounds, pos, "exhausted")
        mover = pos.to_move
        strategy = maker if mover == MAKER else breaker
        proposal = strategy.propose(spec, pos)
        if proposal is None:
            winner = BREAKER if mover == MAKER else MAKER
            return GameResult(winner, None, rounds, pos, "forfeit", True, mover)
        proposal = tuple(proposal)
        try:
            if mover == MAKER:
                rounds += 1
                for i in range(len(proposal)):
                    probe = _apply(spec, pos, MAKER, proposal[: i + 1], allow_short=True)
                    witness = maker_win_witness(spec, probe.maker)
                    if witness is not None:
                        return GameResult(MAKER, witness, rounds, probe, "objective")
                pos = _apply(spec, pos, MAKER, proposal)
            else:
                pos = apply_moves(spec, pos, BREAKER, proposal)
        except IllegalMoveError:
            winner = BREAKER if mover == MAKER else MAKER
            return GameResult(winner, None, rounds, pos, "forfeit", True, mover)


# -- transcript serialization ---------------------------------------------------
#
# Versioned line-oriented format `game-v1`: a header summarizing the spec,
# one line per turn, and a footer with the result and witness.


def element_token(spec: GameSpec, element) -> str:
    if spec.board_kind == EDGES:
        return f"e{element[0]}-{element[1]}"
    return f"v{element}"


def parse_element(spec: GameSpec, token: str):
    if spec.board_kind == EDGES:
        if not token.startswith("e"):
            raise DomainError(f"bad edge token {token!r}")
        u, v = token[1:].split("-")
        return (int(u), int(v))
    if not token.startswith("v"):
        raise DomainError(f"bad vertex token {token!r}")
    return int(token[1:])


def _witness_lines(spec: GameSpec, witness) -> str:
    if witness is None:
        return "witness none"
    if isinstance(witness, OddCycleWitness):
        return "witness cycle " + " ".join(str(v) for v in witness.vertices)
    parts = ["witness", "claims", witness.property]
    if witness.k is not None:
        parts.append(f"k={witness.k}")
    parts.extend(element_token(spec, el) for el in witness.elements)
    return " ".join(parts)


def parse_witness(spec: GameSpec, line: str):
    body = line[len("witness ") :]
    if body == "none":
        return None
    if body.startswith("cycle "):
        return OddCycleWitness(tuple(int(x) for x in body[len("cycle ") :].split()))
    if body.startswith("claims "):
        toks = body.split()[1:]
        prop = toks[0]
        k = None
        rest = toks[1:]
        if rest and rest[0].startswith("k="):
            k = int(rest[0][2:])
            rest = rest[1:]
        elements = tuple(parse_element(spec, t) for t in rest)
        return ClaimSetWitness(elements, prop, k)
    raise DomainError(f"bad witness line {line!r}")


def format_transcript(
    spec: GameSpec, result: GameResult, maker_ident: str, breaker_ident: str
) -> str:
    g = spec.host
    lines = [
        "game-v1",
        f"board {spec.board_kind}",
        f"host {g.fingerprint()} n={g.n} m={g.m}",
        f"bias {spec.maker_bias}:{spec.breaker_bias}",
        f"first {spec.first}",
        f"objective {spec.objective.token()}",
        f"maker {maker_ident}",
        f"breaker {breaker_ident}",
        "moves",
    ]
    for player, elements in result.position.log:
        tag = "M" if player == MAKER else "B"
        lines.append(tag + " " + " ".join(element_token(spec, el) for el in elements))
    lines.append("end")
    lines.append(
        f"result winner={result.winner} reason={result.reason} "
        f"rounds={result.rounds} forfeit={result.forfeited_by or 'none'}"
    )
    lines.append(_witness_lines(spec, result.witness))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TranscriptRecord:
    header: tuple  # ordered (key, value) pairs
    moves: tuple  # (player, element tokens)
    result: tuple  # ordered (key, value) pairs
    witness_line: str


def parse_transcript(text: str) -> TranscriptRecord:
    lines = text.splitlines()
    if not lines or lines[0] != "game-v1":
        raise DomainError("transcript must start with 'game-v1'")
    header = []
    i = 1
    while i < len(lines) and lines[i] != "moves":
        key, _, value = lines[i].partition(" ")
        header.append((key, value))
        i += 1
    if i == len(lines):
        raise DomainError("transcript is missing the moves section")
    i += 1
    moves = []
    while i < len(lines) and lines[i] != "end":
        tag, _, rest = lines[i].partition(" ")
        if tag not in ("M", "B"):
            raise DomainError(f"bad move line {lines[i]!r}")
        moves.append((MAKER if tag == "M" else BREAKER, tuple(rest.split())))
        i += 1
    if i == len(lines):
        raise DomainError("transcript is missing the end marker")
    i += 1
    if i == len(lines) or not lines[i].startswith("result "):
        raise DomainError("transcript is missing the result line")
    result = tuple(
        tuple(kv.split("=", 1)) for kv in lines[i].split()[1:]
    )
    i += 1
    if i == len(lines) or not lines[i].startswith("witness"):
        raise DomainError("transcript is missing the witness line")
    return TranscriptRecord(tuple(header), tuple(moves), result, lines[i])


def format_record(record: TranscriptRecord) -> str:
    """Reproduce the exact transcript text of a parsed record."""
    lines = ["game-v1"]
    lines.extend(f"{k} {v}" for k, v in record.header)
    lines.append("moves")
    for player, tokens in record.moves:
        tag = "M" if player == MAKER else "B"
        lines.append(tag + " " + " ".join(tokens))
    lines.append("end")
    lines.append("result " + " ".join(f"{k}={v}" for k, v in record.result))
    lines.append(record.witness_line)
    return "\n".join(lines) + "\n"


def replay_transcript(spec: GameSpec, record: TranscriptRecord) -> GameResult:
    """Re-run a parsed transcript against a spec and recompute the outcome."""
    pos = Position.initial(spec)
    rounds = 0
    outcome = None
    for player, tokens in record.moves:
        elements = tuple(parse_element(spec, t) for t in tokens)
        if player == MAKER:
            rounds += 1
        pos = _apply(spec, pos, player, elements, allow_short=True)
        if player == MAKER:
            witness = maker_win_witness(spec, pos.maker)
            if witness is not None:
                outcome = GameResult(MAKER, witness, rounds, pos, "objective")
    if outcome is not None:
        return outcome
    fields = dict(record.result)
    if fields.get("forfeit", "none") != "none":
        loser = fields["forfeit"]
        winner = BREAKER if loser == MAKER else MAKER
        return GameResult(winner, None, rounds, pos, "forfeit", True, loser)
    final = evaluate(spec, pos)
    if final.status == "maker-won":
        return GameResult(MAKER, final.witness, rounds, pos, "objective")
    return GameResult(BREAKER, None, rounds, pos, "exhausted")
