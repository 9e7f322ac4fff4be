"""JSON and CSV encodings of matrices, factorizations, words and ring reports.

All emitters produce deterministic text: fixed key order, two-space indent,
trailing newline, LF line endings.
"""
from __future__ import annotations

import csv
import io
import json

from . import conditions
from .forms import FactoredForm
from .matrices import Mat, identity
from .rings import APair, CapExceeded, InvolutiveRing, apair_enumerate, apair_make, ring_parse
from .su3 import h_elem, x_elem
from .twisted import GeneratorWord, build_root_system, word_eval


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _lit(R: InvolutiveRing, value) -> int:
    return R.parse(str(value))


# --- matrices ---------------------------------------------------------------------


def matrix_to_json(M: Mat) -> dict:
    return {"ring": M.ring.spec, "rows": M.literal_rows()}


def matrix_from_json(obj: dict, ring: InvolutiveRing | None = None) -> Mat:
    R = ring or ring_parse(obj["ring"])
    rows = obj["rows"]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix rows must form a square")
    return Mat(R, [[_lit(R, x) for x in r] for r in rows])


# --- SU(3) factorizations ------------------------------------------------------------


def su3_form_to_json(A: Mat, form: FactoredForm) -> dict:
    R = A.ring
    out = {
        "input": matrix_to_json(A),
        "head": R.fmt(form.head_param) if form.head_param is not None else None,
        "factors": [{"sign": f.sign, "t": R.fmt(f.param.t), "u": R.fmt(f.param.u)} for f in form.factors],
        "shape": form.shape,
        "verified": False,
    }
    out["verified"] = su3_json_product(out) == A
    return out


def su3_json_product(obj: dict) -> Mat:
    """Re-multiply a factorization from its JSON form alone."""
    A = matrix_from_json(obj["input"])
    R = A.ring
    M = h_elem(R, _lit(R, obj["head"])) if obj["head"] is not None else identity(R, 3)
    for f in obj["factors"]:
        M = M @ x_elem(f["sign"], apair_make(R, _lit(R, f["t"]), _lit(R, f["u"])))
    return M


# --- words and SU(n) factorizations ------------------------------------------------------


def word_to_json(word: GeneratorWord) -> dict:
    R = word.ring
    letters = []
    for cls, p in word.letters:
        param = {"t": R.fmt(p.t), "u": R.fmt(p.u)} if isinstance(p, APair) else R.fmt(p)
        letters.append({"class": cls.name, "param": param})
    return {"ring": R.spec, "n": word.n, "letters": letters}


def word_from_json(obj: dict) -> GeneratorWord:
    R = ring_parse(obj["ring"])
    n = int(obj["n"])
    rs = build_root_system(n)
    letters = []
    for item in obj["letters"]:
        cls = rs[item["class"]]
        p = item["param"]
        if cls.type_tag == "A2":
            if not isinstance(p, dict):
                raise ValueError(f"class {cls.name} takes a {{t, u}} parameter")
            param = apair_make(R, _lit(R, p["t"]), _lit(R, p["u"]))
        else:
            if isinstance(p, dict):
                raise ValueError(f"class {cls.name} takes a single ring element")
            param = _lit(R, p)
        letters.append((cls, param))
    return GeneratorWord(R, n, letters)


def sun_form_to_json(word: GeneratorWord, form: FactoredForm) -> dict:
    out = {
        "input": word_to_json(word),
        "head": form.head.literal_rows() if form.head is not None else None,
        "factors": [{"sign": f.sign, "rows": f.mat.literal_rows()} for f in form.factors],
        "shape": form.shape,
        "verified": False,
    }
    out["verified"] = sun_json_product(out) == word_eval(word_from_json(out["input"]))
    return out


def sun_json_product(obj: dict) -> Mat:
    word = word_from_json(obj["input"])
    R, n = word.ring, word.n
    M = Mat(R, [[_lit(R, x) for x in r] for r in obj["head"]]) if obj["head"] is not None else identity(R, n)
    for f in obj["factors"]:
        M = M @ Mat(R, [[_lit(R, x) for x in r] for r in f["rows"]])
    return M


# --- ring reports --------------------------------------------------------------------


def _ssr1_cell(R: InvolutiveRing):
    try:
        return conditions.ssr1_holds(R)
    except CapExceeded:
        return "capped"


def ring_report(R: InvolutiveRing) -> dict:
    cert = conditions.c_length(R)
    pairs = apair_enumerate(R)
    mx = conditions.maximal_ideals(R)
    return {
        "spec": R.spec,
        "size": R.size,
        "sr1": conditions.sr1_holds(R),
        "ssr1": _ssr1_cell(R),
        "theta_complete": cert.theta_complete,
        "c_length": cert.k if cert.theta_complete else "exhausted",
        "b1_size": len(cert.b1),
        "apair_size": len(pairs),
        "apair_star_size": sum(1 for p in pairs if p.is_star),
        "max_ideals": len(mx.ideals),
    }


TABLE_COLUMNS = ("spec", "size", "sr1", "ssr1", "theta_complete", "c_length", "apair_star_size")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def table_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for rep in reports:
        w.writerow([_cell(rep[c]) for c in TABLE_COLUMNS])
    return buf.getvalue()
