"""Synthetic log builders shared by the test suite.

The planted-characteristic generator constructs attributes whose expected
classification is known from the construction itself, so it can serve as an
independent oracle for the classifier.
"""

from __future__ import annotations

import csv
import io
import random
from datetime import datetime, timedelta, timezone

from attrlens import EventLog, build_log

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def make_log(traces: dict[str, list[tuple[str, dict]]]) -> EventLog:
    """Build a log from case -> [(activity, attrs)] with ordinal timestamps 1, 2, ..."""

    def records():
        for case, rows in traces.items():
            for i, (activity, attrs) in enumerate(rows, start=1):
                yield case, activity, EPOCH + timedelta(seconds=i), attrs

    return build_log(records())


def planted_characteristic_log(
    rng: random.Random,
    n_static: int = 17,
    n_semi: int = 17,
    n_dynamic: int = 16,
    n_traces: int = 20,
) -> tuple[EventLog, dict[str, str]]:
    """Log with attributes whose characteristic is known by construction.

    * static_*: set once per trace, always at "register"
    * semi_*: set once per trace, at "register" for even traces and
      "checkout" for odd ones (two covered activities)
    * dyn_loop_*: set at every "observe" occurrence; every trace observes
      at least twice (the single-activity loop case)
    * dyn_spread_*: set at "register" and "checkout" of every trace
    """
    static_attrs = [f"static_{i}" for i in range(n_static)]
    semi_attrs = [f"semi_{i}" for i in range(n_semi)]
    n_loop = n_dynamic // 2
    loop_attrs = [f"dyn_loop_{i}" for i in range(n_loop)]
    spread_attrs = [f"dyn_spread_{i}" for i in range(n_dynamic - n_loop)]

    traces: dict[str, list[tuple[str, dict]]] = {}
    for t in range(n_traces):
        register: dict = {a: rng.uniform(1, 100) for a in static_attrs}
        checkout: dict = {}
        semi_host = register if t % 2 == 0 else checkout
        for a in semi_attrs:
            semi_host[a] = rng.uniform(1, 100)
        for a in spread_attrs:
            register[a] = rng.uniform(1, 100)
            checkout[a] = rng.uniform(1, 100)
        rows = [("register", register)]
        for _ in range(rng.randint(2, 4)):
            rows.append(("observe", {a: rng.uniform(1, 100) for a in loop_attrs}))
        for _ in range(rng.randint(0, 2)):
            rows.append((rng.choice(["lab", "ward"]), {}))
        rows.append(("checkout", checkout))
        traces[f"c{t}"] = rows

    expected = {a: "static" for a in static_attrs}
    expected.update({a: "semi-dynamic" for a in semi_attrs})
    expected.update({a: "dynamic" for a in loop_attrs + spread_attrs})
    return make_log(traces), expected


def random_categorical_log(
    rng: random.Random, n_attrs: int = 100, n_traces: int = 10, trace_len: int = 6
) -> EventLog:
    """Log with many categorical text attributes of random skewed frequencies."""
    alphabets = {
        f"cat_{i}": [f"v{chr(ord('a') + j)}" for j in range(rng.randint(1, 8))]
        for i in range(n_attrs)
    }
    traces: dict[str, list[tuple[str, dict]]] = {}
    for t in range(n_traces):
        rows = []
        for _ in range(trace_len):
            attrs = {}
            for name, alphabet in alphabets.items():
                if rng.random() < 0.9:
                    # skew toward early alphabet entries so ties and runaways both occur
                    k = min(int(rng.expovariate(1.2)), len(alphabet) - 1)
                    attrs[name] = alphabet[k]
            rows.append((rng.choice(["triage", "treat", "review"]), attrs))
        traces[f"c{t}"] = rows
    return make_log(traces)


PARITY_COLUMNS = [
    "Case ID",
    "Activity",
    "Timestamp",
    "lab_num",
    "delta_temp",
    "ward_cat",
    "flag",
    "adm_loc",
    "transfer_min",
]


def parity_csv(rng: random.Random, n_traces: int = 1000) -> bytes:
    """CSV bytes of a larger mixed-kind log for end-to-end parity checks.

    Covers quantitative dynamic (lab_num), negative-valued quantitative
    (delta_temp, exercising the shift path), categorical dynamic text
    (ward_cat) and boolean (flag), static text (adm_loc), and semi-dynamic
    numeric (transfer_min). Roughly 2% of lab_num cells are empty.
    """
    wards = ["ICU", "Medical", "Surgical", "Recovery"]
    locations = ["ER", "Referral", "Transfer"]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(PARITY_COLUMNS)
    for t in range(n_traces):
        case = f"p{t}"
        n_obs = rng.randint(2, 5)
        step = 1

        def row(activity, lab="", delta="", ward="", flag="", loc="", transfer=""):
            nonlocal step
            writer.writerow([case, activity, step, lab, delta, ward, flag, loc, transfer])
            step += 1

        transfer_at_start = t % 2 == 0
        row(
            "register",
            lab=round(rng.uniform(60, 220), 2),
            loc=rng.choice(locations),
            flag=rng.choice(["true", "false"]),
            transfer=round(rng.uniform(5, 90), 1) if transfer_at_start else "",
        )
        for _ in range(n_obs):
            lab = "" if rng.random() < 0.02 else round(rng.uniform(60, 220), 2)
            row(
                "observe",
                lab=lab,
                delta=round(rng.uniform(-4, 4), 2),
                ward=rng.choice(wards),
            )
        row(
            "checkout",
            ward=rng.choice(wards),
            flag=rng.choice(["true", "false"]),
            transfer="" if transfer_at_start else round(rng.uniform(5, 90), 1),
        )
    return out.getvalue().encode()
