"""Deterministic corpora that reproduce the published study aggregates.

Four corpora are generated, each a catalog.json plus a replayable
log.jsonl (and synthesized Java sources where statement analysis needs
them):

* study1   five JabRef tasks, 20 developers, 25 sessions, 207 breakpoints
* study2   PdfSam and Raptor, 10 sessions each, 100 breakpoints
* table10  control vs experiment sessions over two tasks
* gv       a small call-graph corpus for the visual client

Everything is derived from explicit data tables; no randomness. Session
elapsed times are integer milliseconds whose per-task mean is exact and
whose population sd sits within 0.005 minutes of the target. The delay
until the first breakpoint is assigned inversely to elapsed time
(largest sessions pinned, the rest on a ratio = a/elapsed + b curve),
which fixes the ratio's population mean and sd while keeping the rank
correlation between delay and elapsed time negative.

``verify`` replays the generated corpora through the real ingestion
path and asserts every calibrated aggregate, so a stale or hand-edited
corpus fails loudly.
"""

from __future__ import annotations

import json
import math
import tempfile
from fractions import Fraction
from pathlib import Path
from statistics import fmean
from typing import Any, Iterable, Mapping, Optional, Sequence

from . import graphs, metrics
from .ingest import Ingestor, load_catalog
from .model import canonical_json
from .store import QueryFilter, Store, StoreSnapshot, query_sessions

MINUTE_MS = 60000
HOUR_MS = 3600000

C = "Call"
I = "IfStatement"
A = "Assignment"
R = "Return"
W = "WhileLoop"

_STATEMENT_TEXT = {
    C: [
        "        handleEntry(current, database);",
        "        logger.info(status.toString());",
        "        panel.refresh();",
        "        writer.flush();",
        "        entries.add(entry.clone());",
    ],
    I: [
        "        if (entry == null) {",
        "        if (count > 0) {",
        "        } else if (panel.isReady()) {",
    ],
    A: [
        "        String content = buffer.toString();",
        "        int count = resolveCount(entries);",
        "        result = parser.parse(line);",
    ],
    R: [
        "        return result;",
        "        return null;",
        "        return entries.size();",
    ],
    W: [
        "        while (iterator.hasNext()) {",
    ],
}

# The one line quoted verbatim in the hot-spot walkthrough.
_SPECIAL_LINES = {
    ("net.sf.jabref.BasePanel", 969):
        "        JabRefDesktop.openExternalViewer(metaData(), link.toString(), field);",
}


# -- timing calibration -------------------------------------------------------


def calibrate_elapsed_ms(minutes: Sequence[float], mean_min: float,
                         sd_min: float) -> list[int]:
    """Integer-ms multiset with exact mean and near-exact population sd."""
    n = len(minutes)
    center = fmean(minutes)
    devs = [v - center for v in minutes]
    cur_sd = math.sqrt(fmean([d * d for d in devs]))
    scale = sd_min / cur_sd
    ms = [round((mean_min + scale * d) * MINUTE_MS) for d in devs]
    ms[0] += round(mean_min * MINUTE_MS) * n - sum(ms)
    assert all(v > MINUTE_MS for v in ms)
    got_mean = fmean(ms) / MINUTE_MS
    got_sd = math.sqrt(fmean([(v / MINUTE_MS - got_mean) ** 2 for v in ms]))
    assert abs(got_mean - mean_min) < 1e-9
    assert abs(got_sd - sd_min) < 0.005
    return ms


def first_bp_delays_ms(elapsed_ms: Sequence[int], pinned_ef_min: Sequence[float],
                       mean_ratio: float, sd_ratio: float) -> list[int]:
    """First-breakpoint delays with fixed ratio moments, decreasing in elapsed.

    The ``len(pinned_ef_min)`` longest sessions get the pinned delays;
    everyone else sits on ratio = a/elapsed + b with a, b solved so the
    population mean and sd of the ratio over all sessions match the
    targets. b < 0 makes the delay itself decrease as elapsed grows.
    """
    n = len(elapsed_ms)
    order = sorted(range(n), key=lambda i: (-elapsed_ms[i], i))
    delays: list[Optional[int]] = [None] * n
    pinned = order[:len(pinned_ef_min)]
    for rank, idx in enumerate(pinned):
        delays[idx] = round(pinned_ef_min[rank] * MINUTE_MS)
    pin_ratios = [delays[i] / elapsed_ms[i] for i in pinned]
    rest = order[len(pinned_ef_min):]
    k = len(rest)
    sum_pin = sum(pin_ratios)
    sumsq_pin = sum(r * r for r in pin_ratios)
    mean_rest = (mean_ratio * n - sum_pin) / k
    meansq_rest = (n * (sd_ratio ** 2 + mean_ratio ** 2) - sumsq_pin) / k
    var_rest = meansq_rest - mean_rest ** 2
    assert var_rest > 0
    xs = [MINUTE_MS / elapsed_ms[i] for i in rest]
    mean_x = fmean(xs)
    var_x = fmean([(x - mean_x) ** 2 for x in xs])
    a = math.sqrt(var_rest / var_x)
    b = mean_rest - a * mean_x
    assert b < 0
    for i in rest:
        ratio = a * (MINUTE_MS / elapsed_ms[i]) + b
        assert 0 < ratio < 1
        delays[i] = round(ratio * elapsed_ms[i])
    out = [d for d in delays if d is not None]
    assert len(out) == n
    for i in range(n):
        assert 0 < delays[i] < elapsed_ms[i]
    return list(delays)  # type: ignore[arg-type]


# -- study 1 ------------------------------------------------------------------

STUDY1_PRODUCT = "jabref"
STUDY1_TASKS = ("318", "667", "669", "993", "1026")
STUDY1_TASK_TITLES = {
    "318": "Fields cleared on tab change",
    "667": "External viewer fails on PDF links",
    "669": "Database import drops entries",
    "993": "Save loses custom fields",
    "1026": "Editor shows stale source",
}
STUDY1_DEVS = {
    "318": ("petrillo", "dev02", "dev03", "dev04", "dev05"),
    "667": ("dev06", "dev07", "dev08", "dev09", "dev10"),
    "669": ("dev11", "dev12", "dev13", "dev14", "dev15"),
    "993": ("dev15", "dev16", "dev17", "dev18", "dev19"),
    "1026": ("dev11", "dev20", "dev02", "dev03", "dev04"),
}
# Index 0 pairs with the task's long session; Table-2 mean/sd in minutes.
STUDY1_ELAPSED_MIN = {
    "318": ((172, 12, 12, 12, 12), 44, 64),
    "667": ((86, 13.5, 13.5, 13.5, 13.5), 28, 29),
    "669": ((72, 9.5, 9.5, 9.5, 9.5), 22, 25),
    "993": ((75, 12.5, 12.5, 12.5, 12.5), 25, 25),
    "1026": ((59, 16.5, 16.5, 16.5, 16.5), 25, 17),
}
STUDY1_PINNED_EF_MIN = (1.10, 1.15, 1.20, 1.25, 1.30)
STUDY1_RATIO_MEAN = 0.27
STUDY1_RATIO_SD = 0.17

# type key -> (full name, ((method signature, declared line), ...), file length)
STUDY1_TYPES = {
    "BTP": ("net.sf.jabref.imports.BibtexParser",
            (("parse(String)", 60), ("parseEntry(String)", 126),
             ("parseFileContent(String)", 150), ("shouldCollectComments()", 301)),
            320),
    "EE": ("net.sf.jabref.gui.EntryEditor",
           (("updateField(FieldEditor)", 700), ("checkValidity()", 800),
            ("applySource(String)", 1100), ("storeCurrentEdit()", 1350)),
           1420),
    "ENT": ("net.sf.jabref.gui.EntityEditor",
            (("storeSource(String)", 600),), 660),
    "BDB": ("net.sf.jabref.BibDatabase",
            (("resolveForStrings(String)", 160), ("insertEntry(BibtexEntry)", 180),
             ("addString(BibtexString)", 450)),
            480),
    "ODA": ("net.sf.jabref.imports.OpenDatabaseAction",
            (("openIt(File)", 260), ("loadDatabase(File)", 420)), 470),
    "SDA": ("net.sf.jabref.gui.SaveDatabaseAction",
            (("runCommand(String)", 170), ("save()", 200)), 220),
    "BPN": ("net.sf.jabref.BasePanel",
            (("runCommand(String)", 900),), 990),
    "JRD": ("net.sf.jabref.external.JabRefDesktop",
            (("openExternalViewer(String)", 30), ("openBrowser(String)", 80),
             ("openFile(String)", 420)),
            450),
    "JR": ("net.sf.jabref.JabRef", (("start(String[])", 90),), 220),
    "JRM": ("net.sf.jabref.JabRefMain", (("main(String[])", 5),), 30),
    "URL": ("net.sf.jabref.util.URLUtil", (("cleanUrl(String)", 90),), 110),
    "AF": ("net.sf.jabref.export.layout.format.AuthorsFormatter",
           (("format(String)", 40), ("reformat(String)", 128)), 145),
    "ETH": ("net.sf.jabref.gui.EntryTableTransferHandler",
            (("importData(JComponent)", 340),), 360),
    "FTM": ("net.sf.jabref.gui.FieldTextMenu",
            (("mousePressed(MouseEvent)", 75),), 95),
    "JRF": ("net.sf.jabref.JabRefFrame", (("init()", 1100),), 1130),
    "GLO": ("net.sf.jabref.Globals", (("startBackgroundTasks()", 50),), 75),
    "PRD": ("net.sf.jabref.gui.PrefsDialog", (("setValues()", 110),), 150),
    "DCM": ("net.sf.jabref.collab.DatabaseChangeMonitor", (("run()", 70),), 100),
}


def _pe() -> str:
    return "petrillo"


def _d(n: int) -> str:
    return f"dev{n:02d}"


def _study1_plan() -> list[tuple[str, int, str, tuple[tuple[str, str], ...]]]:
    """(type key, line, statement class, ((task, developer), ...)) rows."""
    plan: list[tuple[str, int, str, tuple[tuple[str, str], ...]]] = []

    def add(key: str, line: int, cls: str, *who: tuple[str, str | int]) -> None:
        resolved = tuple(
            (task, dev if isinstance(dev, str) else _d(dev)) for task, dev in who)
        plan.append((key, line, cls, resolved))

    # BibtexParser: 44 breakpoints, 6 developers, 3 tasks.
    add("BTP", 138, A, ("669", 11), ("993", 18))
    add("BTP", 151, A, ("669", 13), ("993", 19))
    add("BTP", 159, I, ("669", 11), ("1026", 20))
    add("BTP", 160, I, ("1026", 20), ("1026", 2), ("669", 11))
    add("BTP", 165, I, ("669", 13), ("1026", 2))
    add("BTP", 168, A, ("993", 18), ("1026", 20), ("669", 11))
    add("BTP", 176, I, ("993", 19), ("1026", 2))
    add("BTP", 198, I, ("669", 11), ("993", 18))
    add("BTP", 199, I, ("669", 13), ("993", 19))
    add("BTP", 299, I, ("1026", 20), ("993", 18))
    add("BTP", 62, I, ("669", 11))
    for line, dev in ((66, 11), (70, 11), (74, 11), (78, 13), (82, 13), (86, 13),
                      (90, 13)):
        add("BTP", line, C, ("669", dev))
    for line, dev in ((94, 18), (98, 18), (102, 18), (106, 18), (110, 19),
                      (114, 19), (118, 19), (122, 19)):
        add("BTP", line, C, ("993", dev))
    for line, dev in ((128, 20), (132, 20), (136, 20), (140, 2), (144, 2), (148, 2)):
        add("BTP", line, C, ("1026", dev))

    # EntryEditor: 36 breakpoints, 4 developers, 3 tasks.
    add("EE", 717, I, ("993", 16), ("993", 17), ("1026", 20))
    add("EE", 720, A, ("993", 16), ("993", 17), ("669", 11), ("1026", 20))
    add("EE", 721, I, ("993", 16), ("1026", 11))
    add("EE", 723, R, ("993", 16), ("993", 17))
    add("EE", 837, R, ("669", 11), ("993", 17), ("1026", 20))
    add("EE", 842, A, ("669", 11), ("993", 16))
    add("EE", 1184, A, ("1026", 20), ("1026", 11), ("993", 17))
    add("EE", 1393, I, ("1026", 11), ("993", 16))
    for line in (705, 708, 712, 815):
        add("EE", line, C, ("669", 11))
    add("EE", 728, I, ("993", 16))
    for line in (732, 845, 850):
        add("EE", line, C, ("993", 16))
    for line in (736, 740, 855):
        add("EE", line, C, ("993", 17))
    for line in (1190, 1195):
        add("EE", line, C, ("1026", 20))
    for line in (1398, 1402):
        add("EE", line, C, ("1026", 11))

    # EntityEditor.storeSource: 24 single-developer-per-line breakpoints.
    ent_devs = (15, 16, 17, 18, 19)
    for idx in range(24):
        add("ENT", 601 + idx, C, ("993", ent_devs[idx % 5]))

    # BibDatabase: 19 breakpoints.
    add("BDB", 175, I, ("669", 14), ("1026", 4))
    add("BDB", 187, I, ("993", 18), ("993", 19), ("669", 14))
    add("BDB", 223, R, ("669", 14), ("993", 18))
    add("BDB", 456, A, ("993", 18), ("993", 19), ("669", 14), ("669", 14),
        ("1026", 4), ("1026", 4))
    for line, task, dev in ((190, "993", 19), (195, "993", 19), (228, "669", 14),
                            (232, "669", 14), (460, "1026", 4), (465, "1026", 4)):
        add("BDB", line, C, (task, dev))

    # OpenDatabaseAction: 19 breakpoints, 13 developers.
    add("ODA", 268, A, ("669", 11), ("669", 15))
    add("ODA", 433, A, ("669", 11), ("669", 12), ("669", 13), ("669", 14))
    add("ODA", 450, I, ("993", 16), ("1026", 20))
    add("ODA", 451, I, ("669", 12), ("669", 13), ("669", 14), ("669", 15))
    for line, task, dev in ((271, "993", 17), (275, "993", 18), (279, "993", 19),
                            (283, "1026", 2), (287, "1026", 3), (291, "1026", 4),
                            (295, "993", 16)):
        add("ODA", line, C, (task, dev))

    # SaveDatabaseAction: 7 breakpoints across three tasks.
    add("SDA", 177, R, ("669", 15), ("669", 15), ("993", 15), ("1026", 20))
    add("SDA", 188, I, ("993", 15), ("1026", 20))
    add("SDA", 205, C, ("1026", 20))

    # BasePanel: 14 breakpoints; line 969 spans three tasks.
    add("BPN", 935, A, ("667", 6), ("667", 7))
    add("BPN", 969, C, ("667", 6), ("667", 7), ("667", 8), ("318", _pe()),
        ("1026", 20))
    add("BPN", 910, C, ("318", _pe()))
    for line, dev in ((915, 9), (920, 9), (925, 6), (930, 8)):
        add("BPN", line, C, ("667", dev))
    add("BPN", 940, C, ("669", 12))
    add("BPN", 945, C, ("1026", 20))

    # JabRefDesktop: 9 breakpoints over two tasks.
    add("JRD", 40, A, ("318", 3), ("667", 9))
    add("JRD", 84, I, ("318", 2), ("667", 10))
    add("JRD", 430, R, ("667", 9), ("667", 10), ("318", 2))
    add("JRD", 45, C, ("318", 3))
    add("JRD", 433, C, ("667", 10))

    add("JR", 100, C, ("318", 5))
    add("JR", 150, C, ("667", 10))
    add("JR", 200, C, ("669", 13))

    add("JRM", 8, C, ("318", 5), ("667", 6), ("669", 14), ("993", 18), ("993", 18))

    add("URL", 95, R, ("318", 4), ("667", 8))
    add("URL", 92, C, ("318", 4))
    add("URL", 99, C, ("667", 8))

    add("AF", 43, C, ("318", _pe()), ("318", 2), ("318", 3), ("318", 4), ("318", 5))
    add("AF", 131, W, ("318", _pe()), ("318", 2), ("318", 3))
    add("AF", 76, C, ("318", 4))

    add("ETH", 346, A, ("667", 7), ("667", 7))
    add("FTM", 84, A, ("667", 8), ("667", 8))
    add("JRF", 1119, R, ("318", 5), ("318", 5))

    add("GLO", 55, C, ("318", 2))
    add("GLO", 60, C, ("318", 3))
    add("GLO", 65, C, ("318", 5))

    add("PRD", 120, C, ("667", 9))
    add("PRD", 140, C, ("667", 10))

    add("DCM", 73, C, ("669", 12))
    add("DCM", 88, C, ("669", 13))
    add("DCM", 95, C, ("669", 15))

    total = sum(len(who) for _, _, _, who in plan)
    assert total == 207, total
    by_class: dict[str, int] = {}
    for _, _, cls, who in plan:
        by_class[cls] = by_class.get(cls, 0) + len(who)
    assert by_class == {C: 111, I: 39, A: 36, R: 18, W: 3}, by_class
    return plan


# -- study 2 ------------------------------------------------------------------

STUDY2_PRODUCTS = (
    ("pdfsam", "PdfSam", "Split ignores page ranges"),
    ("raptor", "Raptor", "Examine mode move sync"),
)
STUDY2_DEVS = tuple(f"s{n:02d}" for n in range(1, 11))
STUDY2_ELAPSED_MIN = {
    "pdfsam": ((92, 74, 66, 58, 52, 48, 44, 38, 36, 32), 54, 18),
    "raptor": ((84, 72, 66, 62, 60, 58, 56, 52, 46, 34), 59, 13),
}
STUDY2_PINNED_EF_MIN = (1.10, 1.15)
STUDY2_RATIO_MEAN = 0.23
STUDY2_RATIO_SD = 0.17

STUDY2_TYPES = {
    "PDR": ("pdfsam", "org.pdfsam.PdfReader",
            (("openReader(int)", 220), ("decodeStream()", 800),
             ("closeReader()", 1900)),
            1940),
    "CSF": ("pdfsam", "org.pdfsam.ConsoleServicesFacade",
            (("executeStep(Command)", 80),), 130),
    "CCL": ("pdfsam", "org.pdfsam.ConsoleClient", (("main(String[])", 75),), 110),
    "PDU": ("pdfsam", "org.pdfsam.PdfUtility", (("validate(File)", 88),), 130),
    "ICS": ("raptor", "raptor.util.icsUtils", (("parseMessage(String)", 320),), 385),
    "GAM": ("raptor", "raptor.chess.Game", (("makeMove(Move)", 1740),), 1800),
    "EXC": ("raptor", "raptor.controller.ExamineController",
            (("examine()", 30), ("onMove(Move)", 80)), 125),
}


def _s(n: int) -> str:
    return f"s{n:02d}"


def _study2_plan() -> list[tuple[str, int, str, tuple[str, ...]]]:
    """(type key, line, statement class, (developer, ...)) rows."""
    plan: list[tuple[str, int, str, tuple[str, ...]]] = []

    def add(key: str, line: int, cls: str, *devs: int) -> None:
        plan.append((key, line, cls, tuple(_s(n) for n in devs)))

    add("PDR", 230, I, 1, 2)
    add("PDR", 806, A, 3, 4)
    add("PDR", 1923, I, 5, 6)
    add("CSF", 89, A, 7, 8)
    add("CCL", 81, I, 9, 10)
    add("PDU", 94, I, 1, 3)
    add("PDU", 96, A, 5, 7)
    add("PDU", 102, R, 9, 2)
    for line, dev in ((232, 1), (236, 2), (240, 3), (244, 4), (248, 5), (252, 6),
                      (256, 7), (260, 8), (810, 9), (814, 10), (818, 1), (822, 2),
                      (1910, 3), (1914, 4)):
        add("PDR", line, C, dev)
    add("CSF", 95, C, 5)
    add("CSF", 99, C, 6)
    add("CCL", 85, C, 7)
    add("CCL", 88, C, 8)
    add("PDR", 264, I, 9)
    add("PDR", 268, I, 10)
    add("CSF", 103, I, 1)
    add("CCL", 91, I, 2)
    add("PDU", 106, I, 3)
    add("PDU", 110, I, 4)
    for line, dev in ((272, 5), (276, 6), (280, 7)):
        add("PDR", line, A, dev)
    add("CSF", 107, A, 8)
    add("CSF", 111, A, 9)
    add("CCL", 94, A, 10)
    add("CCL", 97, A, 1)
    add("PDU", 114, A, 2)
    add("PDU", 118, A, 3)
    add("PDR", 284, W, 4)

    add("ICS", 333, C, 1, 2, 3)
    add("GAM", 1751, I, 4, 5)
    add("EXC", 41, A, 6, 7)
    add("EXC", 84, C, 8, 9, 10)
    add("EXC", 87, W, 1, 3)
    add("EXC", 92, R, 2, 4)
    for line, dev in ((325, 1), (329, 2), (337, 3), (341, 4), (345, 5), (349, 6),
                      (353, 7)):
        add("ICS", line, C, dev)
    for line, dev in ((1745, 8), (1748, 9), (1755, 10), (1759, 1), (1763, 2),
                      (1767, 3)):
        add("GAM", line, C, dev)
    for line, dev in ((34, 4), (38, 5), (96, 6), (99, 7), (103, 8), (107, 9)):
        add("EXC", line, C, dev)
    add("ICS", 357, I, 10)
    add("ICS", 361, I, 1)
    add("GAM", 1771, I, 2)
    add("GAM", 1775, I, 3)
    add("EXC", 45, I, 4)
    add("EXC", 49, I, 5)
    for line, dev in ((365, 6), (369, 7), (373, 8)):
        add("ICS", line, A, dev)
    for line, dev in ((1779, 9), (1783, 10), (1787, 1)):
        add("GAM", line, A, dev)
    for line, dev in ((53, 2), (57, 3), (61, 4), (111, 5)):
        add("EXC", line, A, dev)
    add("GAM", 1791, W, 6)

    total = sum(len(devs) for _, _, _, devs in plan)
    assert total == 100, total
    by_class: dict[str, int] = {}
    for _, _, cls, devs in plan:
        by_class[cls] = by_class.get(cls, 0) + len(devs)
    assert by_class == {C: 43, I: 22, A: 27, R: 4, W: 4}, by_class
    return plan


# -- table 10 -----------------------------------------------------------------

TABLE10_PRODUCT = "jabref"
TABLE10_TASKS = ("0993", "1026")
TABLE10_LABELS = ("control", "experiment")
TABLE10_CONTROL_DEVS = tuple(f"ctrl{n:02d}" for n in range(1, 8))
TABLE10_EXPERIMENT_DEVS = tuple(f"exp{n:02d}" for n in range(1, 7))
# metric means in ms: (first breakpoint, first resume, elapsed)
TABLE10_MEANS = {
    ("0993", "control"): (175000, 284000, 1808000),
    ("0993", "experiment"): (220000, 318000, 965000),
    ("1026", "control"): (162400, 242000, 1498000),
    ("1026", "experiment"): (288200, 223000, 1241000),
}
TABLE10_CONTROL_OFFSETS = (12000, -12000, 6000, -6000, 3000, -3000, 0)
TABLE10_EXPERIMENT_OFFSETS = (10000, -10000, 5000, -5000, 2000, -2000)
TABLE10_TYPE = "org.jabref.experiment.GvTarget"

# -- gv -----------------------------------------------------------------------

GV_PRODUCT = "jabref"
GV_TASKS = ("318", "667")


# -- record assembly ----------------------------------------------------------


def _record(kind: str, body: Mapping[str, Any]) -> dict[str, Any]:
    return {"kind": kind, "body": dict(body)}


class _SessionBlock:
    """Accumulates one session's records and emits them sorted by time."""

    def __init__(self, ref: str, developer: str, product: str, task: str,
                 started_at: int, label: str = ""):
        self.ref = ref
        self.started_at = started_at
        self._open = _record("session_open", {
            "session_ref": ref,
            "developer_name": developer,
            "product_name": product,
            "task_issue_key": task,
            "label": label,
            "started_at": started_at,
        })
        self._middle: list[tuple[int, int, dict[str, Any]]] = []
        self._close: Optional[dict[str, Any]] = None
        self._seq = 0

    def add(self, ts: int, record: dict[str, Any]) -> None:
        self._middle.append((ts, self._seq, record))
        self._seq += 1

    def breakpoint(self, ts: int, type_full_name: str, line_number: int) -> None:
        self.add(ts, _record("breakpoint", {
            "session_ref": self.ref,
            "type_full_name": type_full_name,
            "line_number": line_number,
            "kind": "Line",
            "created_at": ts,
        }))

    def event(self, ts: int, kind: str,
              frames: Optional[list[dict[str, Any]]] = None) -> None:
        body: dict[str, Any] = {
            "session_ref": self.ref, "kind": kind, "occurred_at": ts}
        if frames is not None:
            body["frames"] = frames
        self.add(ts, _record("event", body))

    def close(self, ts: int, outcome: str) -> None:
        self._close = _record("session_close", {
            "session_ref": self.ref, "outcome": outcome, "finished_at": ts})

    def records(self) -> list[dict[str, Any]]:
        assert self._close is not None, f"session {self.ref} never closed"
        ordered = sorted(self._middle, key=lambda item: (item[0], item[1]))
        return [self._open, *(rec for _, _, rec in ordered), self._close]


def _catalog_product(name: str, tasks: Iterable[tuple[str, str]],
                     types: Iterable[tuple[str, Sequence[tuple[str, int]]]],
                     ) -> dict[str, Any]:
    return {
        "name": name,
        "tasks": [{"issue_key": key, "title": title} for key, title in tasks],
        "types": [
            {
                "full_name": full_name,
                "source_path": full_name.replace(".", "/") + ".java",
                "has_source": True,
                "methods": [
                    {"signature": sig, "declared_line": line}
                    for sig, line in methods
                ],
            }
            for full_name, methods in types
        ],
    }


def _render_source(full_name: str, methods: Sequence[tuple[str, int]],
                   length: int, line_classes: Mapping[int, str]) -> str:
    ns, _, simple = full_name.rpartition(".")
    lines = [""] * length
    lines[0] = f"package {ns};"
    lines[1] = ""
    lines[2] = f"public class {simple} {{"
    decl_lines = set()
    for signature, declared in methods:
        name = signature.split("(", 1)[0]
        params = signature[signature.index("("):]
        lines[declared - 1] = f"    public Object {name}{params} {{"
        decl_lines.add(declared)
    counters: dict[str, int] = {}
    for line_number, cls in sorted(line_classes.items()):
        assert line_number not in decl_lines, (full_name, line_number)
        assert 3 < line_number <= length, (full_name, line_number)
        variants = _STATEMENT_TEXT[cls]
        idx = counters.get(cls, 0)
        counters[cls] = idx + 1
        text = _SPECIAL_LINES.get((full_name, line_number),
                                  variants[idx % len(variants)])
        lines[line_number - 1] = text
    for i in range(3, length - 1):
        if not lines[i]:
            lines[i] = "        // padding" if i % 4 == 1 else ""
    lines[length - 1] = "}"
    return "\n".join(lines) + "\n"


def _verify_rendered_sources(sources: Mapping[str, str],
                             expectations: Mapping[str, Mapping[int, str]]) -> None:
    for path, per_line in expectations.items():
        text_lines = sources[path].splitlines()
        for line_number, cls in per_line.items():
            got = metrics.classify_statement(text_lines[line_number - 1]).value
            assert got == cls, (path, line_number, got, cls)


# -- corpus builders ----------------------------------------------------------


def build_study1() -> dict[str, Any]:
    plan = _study1_plan()
    type_names = {key: spec[0] for key, spec in STUDY1_TYPES.items()}

    session_keys: list[tuple[str, str]] = []
    elapsed_ms: list[int] = []
    for task in STUDY1_TASKS:
        minutes, mean_min, sd_min = STUDY1_ELAPSED_MIN[task]
        task_ms = calibrate_elapsed_ms(list(minutes), mean_min, sd_min)
        for dev, ms in zip(STUDY1_DEVS[task], task_ms):
            session_keys.append((task, dev))
            elapsed_ms.append(ms)
    delays = first_bp_delays_ms(elapsed_ms, STUDY1_PINNED_EF_MIN,
                                STUDY1_RATIO_MEAN, STUDY1_RATIO_SD)

    per_session_bps: dict[tuple[str, str], list[tuple[str, int]]] = {
        key: [] for key in session_keys}
    line_classes: dict[str, dict[int, str]] = {key: {} for key in STUDY1_TYPES}
    for key, line, cls, who in plan:
        existing = line_classes[key].get(line)
        assert existing is None or existing == cls
        line_classes[key][line] = cls
        for task, dev in who:
            assert (task, dev) in per_session_bps, (task, dev)
            per_session_bps[(task, dev)].append((type_names[key], line))
    assert all(per_session_bps.values()), "every session needs a breakpoint"

    base = 1456822800000  # 2016-03-01T09:00:00Z
    records: list[dict[str, Any]] = []
    outcomes = ("FaultFound", "FaultNotFound", "FaultFound", "FaultFound",
                "Abandoned")
    for idx, key in enumerate(session_keys):
        task, dev = key
        started = base + idx * 4 * HOUR_MS
        block = _SessionBlock(f"s1-{idx:02d}", dev, STUDY1_PRODUCT, task, started)
        bps = per_session_bps[key]
        span = elapsed_ms[idx] - delays[idx]
        step = max(1, span // (len(bps) + 1))
        for k, (full_name, line) in enumerate(bps):
            ts = started + delays[idx] + k * step
            ts = min(ts, started + elapsed_ms[idx] - 1)
            block.breakpoint(ts, full_name, line)
        block.event(started + delays[idx], "Resume")
        block.close(started + elapsed_ms[idx], outcomes[idx % len(outcomes)])
        records.extend(block.records())

    catalog = {"products": [_catalog_product(
        STUDY1_PRODUCT,
        [(task, STUDY1_TASK_TITLES[task]) for task in STUDY1_TASKS],
        [(spec[0], spec[1]) for spec in STUDY1_TYPES.values()],
    )]}
    sources = {}
    expectations = {}
    for key, (full_name, methods, length) in STUDY1_TYPES.items():
        path = full_name.replace(".", "/") + ".java"
        sources[path] = _render_source(full_name, methods, length,
                                       line_classes[key])
        expectations[path] = line_classes[key]
    _verify_rendered_sources(sources, expectations)
    return {"catalog": catalog, "records": records, "sources": sources,
            "sessions": len(session_keys), "breakpoints": 207}


def build_study2() -> dict[str, Any]:
    plan = _study2_plan()
    product_of = {key: spec[0] for key, spec in STUDY2_TYPES.items()}
    full_name_of = {key: spec[1] for key, spec in STUDY2_TYPES.items()}

    session_keys: list[tuple[str, str]] = []
    elapsed_ms: list[int] = []
    for product, _, _ in STUDY2_PRODUCTS:
        minutes, mean_min, sd_min = STUDY2_ELAPSED_MIN[product]
        for dev, ms in zip(STUDY2_DEVS,
                           calibrate_elapsed_ms(list(minutes), mean_min, sd_min)):
            session_keys.append((product, dev))
            elapsed_ms.append(ms)
    delays = first_bp_delays_ms(elapsed_ms, STUDY2_PINNED_EF_MIN,
                                STUDY2_RATIO_MEAN, STUDY2_RATIO_SD)

    per_session_bps: dict[tuple[str, str], list[tuple[str, int]]] = {
        key: [] for key in session_keys}
    line_classes: dict[str, dict[int, str]] = {key: {} for key in STUDY2_TYPES}
    for key, line, cls, devs in plan:
        existing = line_classes[key].get(line)
        assert existing is None or existing == cls
        line_classes[key][line] = cls
        for dev in devs:
            per_session_bps[(product_of[key], dev)].append(
                (full_name_of[key], line))
    assert all(per_session_bps.values())

    base = 1462093200000  # 2016-05-01T09:00:00Z
    records: list[dict[str, Any]] = []
    task_of = {product: issue_key for product, issue_key, _ in STUDY2_PRODUCTS}
    for idx, key in enumerate(session_keys):
        product, dev = key
        started = base + idx * 4 * HOUR_MS
        block = _SessionBlock(f"s2-{idx:02d}", dev, product, task_of[product],
                              started)
        bps = per_session_bps[key]
        span = elapsed_ms[idx] - delays[idx]
        step = max(1, span // (len(bps) + 1))
        for k, (full_name, line) in enumerate(bps):
            ts = min(started + delays[idx] + k * step,
                     started + elapsed_ms[idx] - 1)
            block.breakpoint(ts, full_name, line)
        block.event(started + delays[idx], "Resume")
        block.close(started + elapsed_ms[idx],
                    "FaultFound" if idx % 2 == 0 else "FaultNotFound")
        records.extend(block.records())

    products = []
    for product, issue_key, title in STUDY2_PRODUCTS:
        types = [(spec[1], spec[2]) for spec in STUDY2_TYPES.values()
                 if spec[0] == product]
        products.append(_catalog_product(product, [(issue_key, title)], types))
    sources = {}
    expectations = {}
    for key, (_, full_name, methods, length) in STUDY2_TYPES.items():
        path = full_name.replace(".", "/") + ".java"
        sources[path] = _render_source(full_name, methods, length,
                                       line_classes[key])
        expectations[path] = line_classes[key]
    _verify_rendered_sources(sources, expectations)
    return {"catalog": {"products": products}, "records": records,
            "sources": sources, "sessions": len(session_keys),
            "breakpoints": 100}


def build_table10() -> dict[str, Any]:
    base = 1464685200000  # 2016-05-31T09:00:00Z
    records: list[dict[str, Any]] = []
    idx = 0
    for task in TABLE10_TASKS:
        for label, devs, offsets in (
            ("control", TABLE10_CONTROL_DEVS, TABLE10_CONTROL_OFFSETS),
            ("experiment", TABLE10_EXPERIMENT_DEVS, TABLE10_EXPERIMENT_OFFSETS),
        ):
            fb_mean, tts_mean, el_mean = TABLE10_MEANS[(task, label)]
            for dev, offset in zip(devs, offsets):
                started = base + idx * 2 * HOUR_MS
                block = _SessionBlock(f"t10-{idx:02d}", dev, TABLE10_PRODUCT,
                                      task, started, label=label)
                block.breakpoint(started + fb_mean + offset, TABLE10_TYPE, 42)
                block.event(started + tts_mean + offset, "Resume")
                block.close(started + el_mean + offset,
                            "FaultFound" if label == "experiment" else
                            "FaultNotFound")
                records.extend(block.records())
                idx += 1
    catalog = {"products": [_catalog_product(
        TABLE10_PRODUCT,
        [("0993", "Save loses custom fields"), ("1026", "Editor shows stale source")],
        [(TABLE10_TYPE, [("run()", 40)])],
    )]}
    return {"catalog": catalog, "records": records, "sessions": idx,
            "breakpoints": idx}


def build_gv() -> dict[str, Any]:
    jm = "net.sf.jabref.JabRefMain"
    bp = "net.sf.jabref.BasePanel"
    af = "net.sf.jabref.export.layout.format.AuthorsFormatter"
    url = "net.sf.jabref.util.URLUtil"

    def frame(full_name: str, signature: str, line: int) -> dict[str, Any]:
        return {"type_full_name": full_name, "method_signature": signature,
                "line_number": line}

    base = 1467277200000  # 2016-06-30T09:00:00Z
    g1 = _SessionBlock("gv-00", "gx01", GV_PRODUCT, "318", base)
    g1.breakpoint(base + MINUTE_MS, bp, 969)
    g1.breakpoint(base + 2 * MINUTE_MS, af, 43)
    g1.event(base + 3 * MINUTE_MS, "StepInto", frames=[
        frame(af, "format(String)", 43),
        frame(bp, "runCommand(String)", 935),
        frame(jm, "main(String[])", 8),
    ])
    g1.event(base + 4 * MINUTE_MS, "StepOver", frames=[
        frame(af, "format(String)", 44),
        frame(bp, "runCommand(String)", 935),
        frame(jm, "main(String[])", 8),
    ])
    g1.event(base + 5 * MINUTE_MS, "StepInto", frames=[
        frame(af, "format(String)", 45),
        frame(bp, "runCommand(String)", 935),
    ])
    g1.close(base + HOUR_MS, "FaultFound")

    base2 = base + 2 * HOUR_MS
    g2 = _SessionBlock("gv-01", "gx02", GV_PRODUCT, "667", base2)
    g2.breakpoint(base2 + MINUTE_MS, bp, 969)
    g2.event(base2 + 2 * MINUTE_MS, "StepInto", frames=[
        frame(url, "cleanUrl(String)", 95),
        frame(bp, "runCommand(String)", 936),
        frame(jm, "main(String[])", 8),
    ])
    g2.event(base2 + 3 * MINUTE_MS, "StepOver", frames=[
        frame(url, "cleanUrl(String)", 96),
        frame(bp, "runCommand(String)", 936),
        frame(jm, "main(String[])", 8),
    ])
    g2.close(base2 + HOUR_MS, "FaultNotFound")

    catalog = {"products": [_catalog_product(
        GV_PRODUCT,
        [("318", "Fields cleared on tab change"),
         ("667", "External viewer fails on PDF links")],
        [
            (jm, [("main(String[])", 5)]),
            (bp, [("runCommand(String)", 900)]),
            (af, [("format(String)", 40)]),
            (url, [("cleanUrl(String)", 90)]),
        ],
    )]}
    return {"catalog": catalog,
            "records": [*g1.records(), *g2.records()],
            "sessions": 2, "breakpoints": 3}


# -- generation and verification ----------------------------------------------

_BUILDERS = {
    "study1": build_study1,
    "study2": build_study2,
    "table10": build_table10,
    "gv": build_gv,
}


def generate(out_dir: Path | str) -> dict[str, Any]:
    """Write all corpora under ``out_dir``; returns the manifest."""
    out = Path(out_dir)
    manifest: dict[str, Any] = {"corpora": {}}
    for name, builder in _BUILDERS.items():
        corpus = builder()
        corpus_dir = out / name
        corpus_dir.mkdir(parents=True, exist_ok=True)
        (corpus_dir / "catalog.json").write_text(
            json.dumps(corpus["catalog"], indent=2) + "\n", encoding="utf-8")
        with (corpus_dir / "log.jsonl").open("w", encoding="utf-8") as handle:
            for record in corpus["records"]:
                handle.write(canonical_json(record) + "\n")
        for rel_path, text in corpus.get("sources", {}).items():
            target = corpus_dir / "sources" / rel_path
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
        manifest["corpora"][name] = {
            "path": name,
            "sessions": corpus["sessions"],
            "breakpoints": corpus["breakpoints"],
            "records": len(corpus["records"]),
            "sources": len(corpus.get("sources", {})),
        }
    (out / "manifest.json").write_text(
        canonical_json(manifest) + "\n", encoding="utf-8")
    return manifest


def load_corpus(store: Store, corpus_dir: Path | str):
    """Replay one generated corpus into a store; returns the IngestSummary."""
    corpus_dir = Path(corpus_dir)
    catalog_path = corpus_dir / "catalog.json"
    if catalog_path.is_file():
        load_catalog(store, json.loads(catalog_path.read_text(encoding="utf-8")))
    ingestor = Ingestor(store)
    with (corpus_dir / "log.jsonl").open(encoding="utf-8") as handle:
        return ingestor.import_session_log(handle)


def _closed_metrics(snapshot: StoreSnapshot) -> list[metrics.SessionMetrics]:
    out = []
    for session in query_sessions(snapshot, QueryFilter()):
        if session.finished_at is not None:
            out.append(metrics.session_metrics(snapshot, session.id))
    return out


def _fit_points(rows: Iterable[metrics.SessionMetrics]) -> list[tuple[float, float]]:
    return [
        (m.first_breakpoint_elapsed_ms / MINUTE_MS, m.elapsed_ms / MINUTE_MS)
        for m in rows
        if m.first_breakpoint_elapsed_ms and m.first_breakpoint_elapsed_ms > 0
        and m.elapsed_ms > 0
    ]


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def _distribution_as_dicts(snapshot: StoreSnapshot, root: Path) -> dict[str, tuple[int, int]]:
    resolver = metrics.FileSourceResolver(str(root))
    rows = metrics.statement_type_distribution(snapshot, QueryFilter(), resolver)
    return {row.statement_class.value: (row.count, row.percent) for row in rows}


def _verify_study1(corpus_dir: Path) -> dict[str, Any]:
    with tempfile.TemporaryDirectory() as tmp:
        store = Store(Path(tmp) / "s1.db")
        summary = load_corpus(store, corpus_dir)
        _check(summary.rejected == 0, f"study1 rejects: {summary.first_error}")
        _check(summary.breakpoints == 207, f"study1 breakpoints {summary.breakpoints}")
        snapshot = store.snapshot()
        rows = _closed_metrics(snapshot)
        _check(len(rows) == 25, "study1 expects 25 closed sessions")

        stats = metrics.first_breakpoint_stats(rows)
        _check(abs(stats.ratio_mean - 0.27) < 0.005,
               f"ratio mean {stats.ratio_mean}")
        _check(abs(stats.ratio_sd - 0.17) < 0.005, f"ratio sd {stats.ratio_sd}")
        table2 = {}
        for task, (_, mean_min, sd_min) in STUDY1_ELAPSED_MIN.items():
            per = stats.per_task[task]
            got_mean = per.elapsed_mean_ms / MINUTE_MS
            got_sd = per.elapsed_sd_ms / MINUTE_MS
            _check(metrics.round_half_up(got_mean) == mean_min,
                   f"task {task} mean {got_mean}")
            _check(metrics.round_half_up(got_sd) == sd_min,
                   f"task {task} sd {got_sd}")
            table2[task] = (got_mean, got_sd)

        fit = metrics.fit_power_law(_fit_points(rows))
        _check(fit.rho < 0, f"study1 rho {fit.rho}")

        dist = _distribution_as_dicts(snapshot, corpus_dir / "sources")
        _check(dist == {"Call": (111, 54), "IfStatement": (39, 19),
                        "Assignment": (36, 17), "Return": (18, 9),
                        "WhileLoop": (3, 1)}, f"study1 distribution {dist}")

        same_task = metrics.colocated_breakpoints(
            snapshot, QueryFilter(), metrics.ColocationMode.SAME_TASK)
        got_rows = {
            (g.task_issue_keys[0],
             g.location.type_full_name.rpartition(".")[2],
             g.location.line_number): (g.breakpoint_count, g.distinct_developers)
            for g in same_task
        }
        expected_same = {
            ("318", "AuthorsFormatter", 43): (5, 5),
            ("318", "AuthorsFormatter", 131): (3, 3),
            ("667", "BasePanel", 935): (2, 2),
            ("667", "BasePanel", 969): (3, 3),
            ("667", "JabRefDesktop", 430): (2, 2),
            ("669", "OpenDatabaseAction", 268): (2, 2),
            ("669", "OpenDatabaseAction", 433): (4, 4),
            ("669", "OpenDatabaseAction", 451): (4, 4),
            ("993", "EntryEditor", 717): (2, 2),
            ("993", "EntryEditor", 720): (2, 2),
            ("993", "EntryEditor", 723): (2, 2),
            ("993", "BibDatabase", 187): (2, 2),
            ("993", "BibDatabase", 456): (2, 2),
            ("1026", "EntryEditor", 1184): (2, 2),
            ("1026", "BibtexParser", 160): (2, 2),
        }
        _check(got_rows == expected_same,
               f"same-task co-location rows: {sorted(got_rows)}")

        across = metrics.colocated_breakpoints(
            snapshot, QueryFilter(), metrics.ColocationMode.ACROSS_TASKS)
        across_map = {
            (g.location.type_full_name.rpartition(".")[2], g.location.line_number):
            (g.breakpoint_count, len(g.task_issue_keys))
            for g in across
        }
        _check(across_map[("BasePanel", 969)] == (5, 3), across_map)
        _check(across_map[("SaveDatabaseAction", 177)] == (4, 3), across_map)
        _check(across_map[("JabRefMain", 8)] == (5, 4), across_map)
        _check(across_map[("EntryEditor", 720)] == (4, 3), across_map)

        matrix = metrics.class_task_matrix(snapshot, QueryFilter())
        got_matrix = {
            row.simple_name: (set(row.task_issue_keys), row.breakpoint_count,
                              row.developer_diversity)
            for row in matrix
        }
        expected_matrix = {
            "SaveDatabaseAction": ({"669", "993", "1026"}, 7, 2),
            "BasePanel": ({"318", "667", "669", "1026"}, 14, 7),
            "JabRefDesktop": ({"318", "667"}, 9, 4),
            "EntryEditor": ({"669", "993", "1026"}, 36, 4),
            "BibtexParser": ({"669", "993", "1026"}, 44, 6),
            "OpenDatabaseAction": ({"669", "993", "1026"}, 19, 13),
            "JabRef": ({"318", "667", "669"}, 3, 3),
            "JabRefMain": ({"318", "667", "669", "993"}, 5, 4),
            "URLUtil": ({"318", "667"}, 4, 2),
            "BibDatabase": ({"669", "993", "1026"}, 19, 4),
        }
        _check(got_matrix == expected_matrix, f"class/task matrix {got_matrix}")
        _check(sum(v[1] for v in got_matrix.values()) == 160,
               "matrix breakpoint total")

        spots = metrics.method_hotspots(snapshot, QueryFilter(), min_count=5)
        by_method = {s.display_name: s.breakpoint_count for s in spots}
        _check(by_method.get("EntityEditor.storeSource") == 24, by_method)
        _check(by_method.get("BibtexParser.parseFileContent") == 20, by_method)

        store.close()
        return {"table2": table2, "fit_rho": fit.rho,
                "ratio_mean": stats.ratio_mean, "ratio_sd": stats.ratio_sd}


def _verify_study2(corpus_dir: Path) -> dict[str, Any]:
    with tempfile.TemporaryDirectory() as tmp:
        store = Store(Path(tmp) / "s2.db")
        summary = load_corpus(store, corpus_dir)
        _check(summary.rejected == 0, f"study2 rejects: {summary.first_error}")
        _check(summary.breakpoints == 100, "study2 expects 100 breakpoints")
        snapshot = store.snapshot()
        rows = _closed_metrics(snapshot)
        _check(len(rows) == 20, "study2 expects 20 closed sessions")

        stats = metrics.first_breakpoint_stats(rows)
        _check(abs(stats.ratio_mean - 0.23) < 0.005, stats.ratio_mean)
        _check(abs(stats.ratio_sd - 0.17) < 0.005, stats.ratio_sd)
        for key, (_, mean_min, sd_min) in (
            ("PdfSam", STUDY2_ELAPSED_MIN["pdfsam"]),
            ("Raptor", STUDY2_ELAPSED_MIN["raptor"]),
        ):
            per = stats.per_task[key]
            _check(metrics.round_half_up(per.elapsed_mean_ms / MINUTE_MS) == mean_min,
                   f"{key} mean")
            _check(metrics.round_half_up(per.elapsed_sd_ms / MINUTE_MS) == sd_min,
                   f"{key} sd")

        dist = _distribution_as_dicts(snapshot, corpus_dir / "sources")
        _check(dist == {"Call": (43, 43), "IfStatement": (22, 22),
                        "Assignment": (27, 27), "Return": (4, 4),
                        "WhileLoop": (4, 4)}, f"study2 distribution {dist}")
        store.close()
        return {"ratio_mean": stats.ratio_mean, "ratio_sd": stats.ratio_sd}


def _verify_combined(study1_dir: Path, study2_dir: Path) -> dict[str, Any]:
    with tempfile.TemporaryDirectory() as tmp:
        store = Store(Path(tmp) / "all.db")
        load_corpus(store, study1_dir)
        load_corpus(store, study2_dir)
        snapshot = store.snapshot()
        rows = _closed_metrics(snapshot)
        _check(len(rows) == 45, "combined store expects 45 sessions")
        fit = metrics.fit_power_law(_fit_points(rows))
        _check(fit.rho < 0, f"combined rho {fit.rho}")
        store.close()
        return {"rho": fit.rho, "alpha": fit.alpha, "beta": fit.beta}


def _verify_table10(corpus_dir: Path) -> dict[str, Any]:
    with tempfile.TemporaryDirectory() as tmp:
        store = Store(Path(tmp) / "t10.db")
        summary = load_corpus(store, corpus_dir)
        _check(summary.rejected == 0, f"table10 rejects: {summary.first_error}")
        snapshot = store.snapshot()
        expected_ratio = {
            "0993": {"first_breakpoint": 126, "time_to_start": 112, "elapsed": 53},
            "1026": {"first_breakpoint": 177, "time_to_start": 92, "elapsed": 83},
        }
        out: dict[str, Any] = {}
        for task_key in TABLE10_TASKS:
            control = []
            experiment = []
            for session in snapshot.sessions.values():
                task = snapshot.tasks[session.task_id]
                if task.issue_key != task_key:
                    continue
                (control if session.label == "control" else experiment).append(
                    session.id)
            comparison = metrics.group_comparison(snapshot, control, experiment)
            _check(comparison.ratio_percent == expected_ratio[task_key],
                   f"task {task_key} ratios {comparison.ratio_percent}")
            out[task_key] = dict(comparison.ratio_percent)
        store.close()
        return out


def _verify_gv(corpus_dir: Path) -> dict[str, Any]:
    with tempfile.TemporaryDirectory() as tmp:
        store = Store(Path(tmp) / "gv.db")
        summary = load_corpus(store, corpus_dir)
        _check(summary.rejected == 0, f"gv rejects: {summary.first_error}")
        _check(summary.invocations == 9, f"gv invocations {summary.invocations}")
        snapshot = store.snapshot()
        product = snapshot.product_by_name(GV_PRODUCT)
        assert product is not None
        filt_all = QueryFilter(product_id=product.id)
        graph = graphs.build_call_graph(snapshot, filt_all)
        _check(len(graph.nodes) == 4, f"gv nodes {len(graph.nodes)}")
        _check(len(graph.edges) == 4, f"gv edges {len(graph.edges)}")
        _check(sum(e.weight for e in graph.edges) == 9, "gv weight sum")
        layer_by_label = {
            graph.node_labels[node]: layer
            for node, layer in graphs.layered_layout(graph).items()
        }
        _check(layer_by_label == {"JabRefMain": 0, "BasePanel": 1,
                                  "AuthorsFormatter": 2, "URLUtil": 2},
               f"gv layers {layer_by_label}")
        counts = {}
        for key in GV_TASKS:
            task = snapshot.task_by_key(product.id, key)
            assert task is not None
            sub = graphs.build_call_graph(
                snapshot, QueryFilter(product_id=product.id,
                                      task_ids=frozenset({task.id})))
            counts[key] = (len(sub.nodes), len(sub.edges))
        _check(counts == {"318": (3, 2), "667": (3, 2)}, f"gv filters {counts}")
        store.close()
        return {"filters": counts}


def verify(out_dir: Path | str) -> dict[str, Any]:
    """Replay every corpus and assert the calibrated aggregates hold."""
    out = Path(out_dir)
    results = {
        "study1": _verify_study1(out / "study1"),
        "study2": _verify_study2(out / "study2"),
        "combined": _verify_combined(out / "study1", out / "study2"),
        "table10": _verify_table10(out / "table10"),
        "gv": _verify_gv(out / "gv"),
    }
    return results
