"""Text format for elections: a candidates header, an optional rule, and one
line per voter block.

    # comment
    candidates: alice bob carol
    rule: scoring 2 1 0
    voter: mult=2 weight=4 price=3 order=alice>bob>carol
    voter: approve=101 flipcost=1,2,5

Defaults are mult=1, weight=1, price=1.  ``flipcost`` carries per-entry
approval flip prices and is the one extension beyond the basics: priced
entry-flip instances cannot be expressed without it.
"""

from __future__ import annotations

import re

from .elections import (
    APPROVALS,
    Election,
    ElectionError,
    ORDERS,
    Rule,
    VoterBlock,
    kapproval,
    scoring,
)

_NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")
_PLAIN_RULES = ("plurality", "approval", "veto", "dodgson", "young", "kemeny")


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} {token!r} is not an integer") from None
    if value < 0:
        raise ParseError(lineno, f"{what} must be nonnegative, got {value}")
    return value


def parse_rule_tokens(tokens: list[str], lineno: int = 0) -> Rule:
    if not tokens:
        raise ParseError(lineno, "empty rule")
    kind = tokens[0]
    if kind in _PLAIN_RULES:
        if len(tokens) > 1:
            raise ParseError(lineno, f"rule {kind} takes no arguments")
        return Rule(kind)
    if kind == "kapproval":
        if len(tokens) != 2:
            raise ParseError(lineno, "kapproval takes exactly one argument")
        return kapproval(_parse_int(tokens[1], lineno, "kapproval k"))
    if kind == "scoring":
        if len(tokens) < 2:
            raise ParseError(lineno, "scoring needs a score vector")
        alpha = tuple(_parse_int(t, lineno, "score entry") for t in tokens[1:])
        try:
            return scoring(alpha)
        except ElectionError as exc:
            raise ParseError(lineno, str(exc)) from None
    raise ParseError(lineno, f"unknown rule {kind!r}")


def _parse_voter(line: str, lineno: int, names: list[str]) -> tuple[VoterBlock, str]:
    fields = line.split()
    mult = weight = price = None
    flip_prices = None
    ballot = None
    kind = None
    index = {n: i for i, n in enumerate(names)}
    for field in fields:
        if "=" not in field:
            raise ParseError(lineno, f"malformed voter field {field!r}")
        key, _, value = field.partition("=")
        if key == "mult":
            mult = _parse_int(value, lineno, "mult")
            if mult == 0:
                raise ParseError(lineno, "mult must be positive")
        elif key == "weight":
            weight = _parse_int(value, lineno, "weight")
        elif key == "price":
            price = _parse_int(value, lineno, "price")
        elif key == "flipcost":
            flip_prices = tuple(
                _parse_int(t, lineno, "flipcost entry") for t in value.split(",") if t
            )
        elif key == "order":
            if ballot is not None:
                raise ParseError(lineno, "voter has more than one ballot")
            kind = ORDERS
            parts = value.split(">")
            seen = set()
            ids = []
            for part in parts:
                if part not in index:
                    raise ParseError(lineno, f"unknown candidate name {part!r}")
                if part in seen:
                    raise ParseError(lineno, f"candidate {part!r} repeats in the order")
                seen.add(part)
                ids.append(index[part])
            if len(ids) != len(names):
                raise ParseError(lineno, f"order lists {len(ids)} of {len(names)} candidates")
            ballot = tuple(ids)
        elif key == "approve":
            if ballot is not None:
                raise ParseError(lineno, "voter has more than one ballot")
            kind = APPROVALS
            if len(value) != len(names) or any(ch not in "01" for ch in value):
                raise ParseError(
                    lineno, f"approval bitstring {value!r} must be {len(names)} bits of 0/1"
                )
            ballot = tuple(ch == "1" for ch in value)
        else:
            raise ParseError(lineno, f"unknown voter field {key!r}")
    if ballot is None:
        raise ParseError(lineno, "voter needs order= or approve=")
    if flip_prices is not None and len(flip_prices) != len(names):
        raise ParseError(lineno, f"flipcost needs {len(names)} entries")
    block = VoterBlock(
        ballot,
        price=1 if price is None else price,
        weight=1 if weight is None else weight,
        multiplicity=1 if mult is None else mult,
        flip_prices=flip_prices,
    )
    return block, kind


def parse_election(text: str) -> tuple[Election, Rule | None]:
    names: list[str] | None = None
    rule: Rule | None = None
    ballots_kind: str | None = None
    voters: list[VoterBlock] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        rest = rest.strip()
        if key == "candidates":
            if names is not None:
                raise ParseError(lineno, "duplicate candidates line")
            names = rest.split()
            if not names:
                raise ParseError(lineno, "candidates line lists no names")
            for n in names:
                if not _NAME_RE.match(n):
                    raise ParseError(lineno, f"bad candidate name {n!r}")
            if len(set(names)) != len(names):
                raise ParseError(lineno, "duplicate candidate names")
        elif key == "rule":
            if rule is not None:
                raise ParseError(lineno, "duplicate rule line")
            rule = parse_rule_tokens(rest.split(), lineno)
        elif key == "ballots":
            if rest not in (ORDERS, APPROVALS):
                raise ParseError(lineno, f"ballots must be {ORDERS} or {APPROVALS}")
            ballots_kind = rest
        elif key == "voter":
            if names is None:
                raise ParseError(lineno, "voter line before candidates line")
            block, kind = _parse_voter(rest, lineno, names)
            if ballots_kind is None:
                ballots_kind = kind
            elif ballots_kind != kind:
                raise ParseError(lineno, "mixed order and approval ballots")
            voters.append(block)
        else:
            raise ParseError(lineno, f"unknown line kind {key!r}")
    if names is None:
        raise ParseError(0, "missing candidates line")
    if ballots_kind is None:
        ballots_kind = APPROVALS if rule is not None and rule.kind == "approval" else ORDERS
    try:
        election = Election(tuple(names), tuple(voters), ballots_kind)
    except ElectionError as exc:
        raise ParseError(0, str(exc)) from None
    return election, rule


def rule_tokens(rule: Rule) -> str:
    if rule.kind == "kapproval":
        return f"kapproval {rule.k}"
    if rule.kind == "scoring":
        return "scoring " + " ".join(str(a) for a in rule.alpha)
    return rule.kind


def serialize_ballot(e: Election, ballot: tuple) -> str:
    if e.ballot_kind == ORDERS:
        return "order=" + ">".join(e.candidates[c] for c in ballot)
    return "approve=" + "".join("1" if b else "0" for b in ballot)


def serialize_election(e: Election, rule: Rule | None = None) -> str:
    lines = ["candidates: " + " ".join(e.candidates)]
    if rule is not None:
        lines.append("rule: " + rule_tokens(rule))
    if not e.voters and e.ballot_kind == APPROVALS and (rule is None or rule.kind != "approval"):
        lines.append(f"ballots: {APPROVALS}")
    for v in e.voters:
        fields = []
        if v.multiplicity != 1:
            fields.append(f"mult={v.multiplicity}")
        if v.weight != 1:
            fields.append(f"weight={v.weight}")
        if v.price != 1:
            fields.append(f"price={v.price}")
        fields.append(serialize_ballot(e, v.ballot))
        if v.flip_prices is not None:
            fields.append("flipcost=" + ",".join(str(c) for c in v.flip_prices))
        lines.append("voter: " + " ".join(fields))
    return "\n".join(lines) + "\n"
