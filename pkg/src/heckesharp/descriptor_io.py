"""JSON descriptor files.

Schema (version 1)::

    {
      "version": 1,
      "d": 2,
      "blocks": [{"m": 1, "e": 2, "t": 1, "q_param": 0}, ...],
      "gamma_group": {"invariant_factors": [3]},
      "gamma_actions": [{"gamma": [1], "w": [[1, 3, 5], [2, 4, 6]], "chi": ["0", ...]},
                        {"gamma": [2], "w": null, "chi": null}],
      "v_mu_dim": 1,
      "x_l_omega_vmu_order": 1,
      "kappa": [{"g": [1, 0], "h": [0, 1], "value": "1/2"}],
      "notes": ""
    }

``w`` uses 1-based cycles over the torus coordinates; ``null`` marks an
element that does not stabilize. Unlisted kappa values are 0; a missing
``kappa`` key means no cocycle is supplied. Defaults: t = 1, q_param = 0,
v_mu_dim = 1, x_l_omega_vmu_order = 1.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bernstein import Block, GammaAction, InertialDescriptor
from .errors import ParseError
from .finstruct import FinAbGroup, TwoCocycle, perm_from_cycles, perm_to_cycles

VERSION = 1

_TOP_KEYS = {"version", "d", "blocks", "gamma_group", "gamma_actions", "v_mu_dim",
             "x_l_omega_vmu_order", "kappa", "notes"}


def _int(doc, key, path, default=None, minimum=1):
    if key not in doc:
        if default is None:
            raise ParseError(f"{path}.{key}", "missing required field")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{path}.{key}", f"expected an integer, got {json.dumps(v)}")
    if v < minimum:
        raise ParseError(f"{path}.{key}", f"must be >= {minimum}, got {v}")
    return v


def _list(doc, key, path, required=True):
    if key not in doc:
        if required:
            raise ParseError(f"{path}.{key}", "missing required field")
        return None
    v = doc[key]
    if not isinstance(v, list):
        raise ParseError(f"{path}.{key}", "expected an array")
    return v


def _fraction(v, path):
    if isinstance(v, bool):
        raise ParseError(path, f"expected a rational, got {json.dumps(v)}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(path, f"expected a rational like \"a/b\", got {json.dumps(v)}")


def _int_vector(v, path, length):
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise ParseError(path, "expected an array of integers")
    if len(v) != length:
        raise ParseError(path, f"expected {length} coordinates, got {len(v)}")
    return tuple(v)


def descriptor_from_json(doc) -> InertialDescriptor:
    """Build a descriptor from a parsed JSON document.

    Raises ParseError for malformed input; domain errors (e.g.
    InconsistentDescriptor) only arise later, in the analysis."""
    if not isinstance(doc, dict):
        raise ParseError("$", "expected an object")
    unknown = sorted(set(doc) - _TOP_KEYS)
    if unknown:
        raise ParseError(f"$.{unknown[0]}", "unknown field")
    version = _int(doc, "version", "$", default=VERSION)
    if version != VERSION:
        raise ParseError("$.version", f"unsupported version {version}")
    d = _int(doc, "d", "$")

    blocks = []
    raw_blocks = _list(doc, "blocks", "$")
    if not raw_blocks:
        raise ParseError("$.blocks", "at least one block is required")
    for i, b in enumerate(raw_blocks):
        p = f"$.blocks[{i}]"
        if not isinstance(b, dict):
            raise ParseError(p, "expected an object")
        extra = sorted(set(b) - {"m", "e", "t", "q_param"})
        if extra:
            raise ParseError(f"{p}.{extra[0]}", "unknown field")
        blocks.append(Block(_int(b, "m", p), _int(b, "e", p), _int(b, "t", p, default=1),
                            _int(b, "q_param", p, default=0, minimum=0)))
    rank = sum(b.e for b in blocks)

    gg = doc.get("gamma_group", {"invariant_factors": []})
    if not isinstance(gg, dict):
        raise ParseError("$.gamma_group", "expected an object")
    factors = _list(gg, "invariant_factors", "$.gamma_group")
    for i, f in enumerate(factors):
        if isinstance(f, bool) or not isinstance(f, int) or f < 2:
            raise ParseError(f"$.gamma_group.invariant_factors[{i}]", "expected an integer >= 2")
    group = FinAbGroup(factors)

    actions = []
    for i, a in enumerate(_list(doc, "gamma_actions", "$", required=False) or []):
        p = f"$.gamma_actions[{i}]"
        if not isinstance(a, dict):
            raise ParseError(p, "expected an object")
        if "gamma" not in a:
            raise ParseError(f"{p}.gamma", "missing required field")
        gamma = _int_vector(a["gamma"], f"{p}.gamma", group.rank)
        w = a.get("w")
        if w is None:
            actions.append(GammaAction(gamma, None, None))
            continue
        if not isinstance(w, list) or any(not isinstance(c, list) for c in w):
            raise ParseError(f"{p}.w", "expected an array of cycles (arrays of 1-based integers)")
        for j, cyc in enumerate(w):
            for k, x in enumerate(cyc):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ParseError(f"{p}.w[{j}][{k}]", "expected an integer")
        try:
            perm = perm_from_cycles(w, rank)
        except ValueError as exc:
            raise ParseError(f"{p}.w", str(exc)) from None
        chi = a.get("chi")
        if chi is None:
            chi = [0] * rank
        if not isinstance(chi, list):
            raise ParseError(f"{p}.chi", "expected an array of rationals")
        if len(chi) != rank:
            raise ParseError(f"{p}.chi", f"expected {rank} coordinates, got {len(chi)}")
        chi = tuple(_fraction(x, f"{p}.chi[{j}]") for j, x in enumerate(chi))
        actions.append(GammaAction(gamma, perm, chi))

    kappa = None
    if "kappa" in doc and doc["kappa"] is not None:
        table = {}
        for i, row in enumerate(_list(doc, "kappa", "$")):
            p = f"$.kappa[{i}]"
            if not isinstance(row, dict):
                raise ParseError(p, "expected an object")
            for key in ("g", "h", "value"):
                if key not in row:
                    raise ParseError(f"{p}.{key}", "missing required field")
            g = _int_vector(row["g"], f"{p}.g", group.rank)
            h = _int_vector(row["h"], f"{p}.h", group.rank)
            table[(g, h)] = _fraction(row["value"], f"{p}.value")
        # validated here so a corrupted table surfaces as InvalidCocycle
        kappa = TwoCocycle(group, table)

    notes = doc.get("notes", "")
    if not isinstance(notes, str):
        raise ParseError("$.notes", "expected a string")
    return InertialDescriptor(
        d=d, blocks=blocks, gamma_group=group, gamma_actions=actions,
        v_mu_dim=_int(doc, "v_mu_dim", "$", default=1),
        x_l_omega_vmu_order=_int(doc, "x_l_omega_vmu_order", "$", default=1),
        kappa=kappa, notes=notes)


def parse_descriptor(text: str) -> InertialDescriptor:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"$ (line {exc.lineno}, column {exc.colno})", exc.msg) from None
    return descriptor_from_json(doc)


def load_descriptor(path) -> InertialDescriptor:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError("$", f"cannot read {path}: {exc.strerror}") from None
    return parse_descriptor(text)


def descriptor_to_json(desc: InertialDescriptor) -> dict:
    doc = {
        "version": VERSION,
        "d": desc.d,
        "blocks": [{"m": b.m, "e": b.e, "t": b.t, "q_param": b.q_param} for b in desc.blocks],
        "gamma_group": {"invariant_factors": list(desc.gamma_group.moduli)},
        "gamma_actions": [
            {"gamma": list(a.gamma), "w": None, "chi": None} if a.w is None else
            {"gamma": list(a.gamma), "w": perm_to_cycles(a.w),
             "chi": [str(Fraction(x)) for x in a.chi]}
            for a in desc.gamma_actions],
        "v_mu_dim": desc.v_mu_dim,
        "x_l_omega_vmu_order": desc.x_l_omega_vmu_order,
    }
    if desc.kappa is not None:
        k = desc.kappa
        elems = k.group.elements()
        doc["kappa"] = [
            {"g": list(g), "h": list(h), "value": str(k(g, h))}
            for g in elems for h in elems if k(g, h) != 0]
    doc["notes"] = desc.notes
    return doc


def _compact(v):
    return json.dumps(v, separators=(", ", ": "))


def dump_descriptor(desc: InertialDescriptor) -> str:
    """Diff-friendly JSON: one line per block, action and kappa entry."""
    doc = descriptor_to_json(desc)
    lines = []
    for key, v in doc.items():
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            inner = ",\n".join(f"    {_compact(x)}" for x in v)
            lines.append(f'  "{key}": [\n{inner}\n  ]')
        else:
            lines.append(f'  "{key}": {_compact(v)}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


__all__ = ["descriptor_from_json", "descriptor_to_json", "dump_descriptor",
           "load_descriptor", "parse_descriptor"]
