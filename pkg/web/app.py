"""Flask JSON API over the fastmod results log.

Read-only: benchmark and verification history recorded with `main.py --record`,
plus on-demand reciprocal parameters and divisibility queries.
"""

import json
import os
import sqlite3
import sys

from dotenv import load_dotenv
from flask import Flask, jsonify, request

load_dotenv()

# Add project root to path so we can import config
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import config
import logger
from magic import (convenient_signed_params, convenient_unsigned_params,
                   minimal_signed_params, minimal_unsigned_params)
from strategies import get_strategy

app = Flask(__name__)

# DB path is relative to project root
DB_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                       os.getenv("FASTMOD_DB_PATH", config.DB_PATH))


def get_db():
    conn = sqlite3.connect(DB_PATH)
    conn.row_factory = sqlite3.Row
    conn.execute("PRAGMA journal_mode=WAL")
    logger.init_tables(conn)
    return conn


def _int_arg(name, default):
    value = request.args.get(name)
    return default if value is None else int(value, 0)


# ---------------------------------------------------------------------------
# API: recorded history
# ---------------------------------------------------------------------------

@app.route("/api/bench")
def api_bench():
    benchmark = request.args.get("benchmark")
    try:
        limit = _int_arg("limit", config.HISTORY_LIMIT)
    except ValueError as e:
        return jsonify({"error": str(e)}), 400
    try:
        conn = get_db()
        sql = "SELECT * FROM bench_log"
        params = []
        if benchmark:
            sql += " WHERE benchmark = ?"
            params.append(benchmark)
        rows = conn.execute(sql + " ORDER BY id DESC LIMIT ?", params + [limit]).fetchall()
        conn.close()
        return jsonify([dict(r) for r in rows])
    except Exception as e:
        return jsonify({"error": str(e)}), 500


@app.route("/api/verify")
def api_verify():
    try:
        limit = _int_arg("limit", config.HISTORY_LIMIT)
    except ValueError as e:
        return jsonify({"error": str(e)}), 400
    try:
        conn = get_db()
        rows = conn.execute(
            "SELECT * FROM verify_log ORDER BY id DESC LIMIT ?", (limit,)
        ).fetchall()
        conn.close()
        out = []
        for r in rows:
            rec = dict(r)
            rec["spec"] = json.loads(rec["spec"])
            rec["first_mismatches"] = json.loads(rec["first_mismatches"] or "[]")
            out.append(rec)
        return jsonify(out)
    except Exception as e:
        return jsonify({"error": str(e)}), 500


# ---------------------------------------------------------------------------
# API: on-demand arithmetic
# ---------------------------------------------------------------------------

@app.route("/api/magic/<d>")
def api_magic(d):
    try:
        d = int(d, 0)
        n_bits = _int_arg("n_bits", config.N_BITS)
        signed = request.args.get("signed", "false").lower() in ("1", "true", "yes")
        mode = request.args.get("mode", "convenient")
        if mode not in ("minimal", "convenient"):
            raise ValueError(f"mode must be minimal or convenient, got {mode!r}")
        if signed:
            choose = minimal_signed_params if mode == "minimal" else convenient_signed_params
            params = choose(abs(d), n_bits)
        else:
            choose = minimal_unsigned_params if mode == "minimal" else convenient_unsigned_params
            params = choose(d, n_bits)
    except ValueError as e:
        return jsonify({"error": str(e)}), 400
    out = params.to_dict()
    out["d"] = d
    # c can reach 2^64, past what JSON consumers hold exactly
    out["c"] = str(params.c)
    return jsonify(out)


@app.route("/api/divisible/<n>/<d>")
def api_divisible(n, d):
    strategy = request.args.get("strategy", "lkk")
    try:
        n, d = int(n, 0), int(d, 0)
        signed = n < 0 or d < 0
        result = bool(get_strategy(strategy, d, config.N_BITS, signed).divisible(n))
    except ValueError as e:
        return jsonify({"error": str(e)}), 400
    return jsonify({"n": n, "d": d, "strategy": strategy, "divisible": result})


if __name__ == "__main__":
    app.run(host="0.0.0.0", port=5000, debug=True)
