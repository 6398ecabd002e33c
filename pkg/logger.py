"""SQLite results log for benchmark and verification runs."""

import json
import sqlite3
import logging
from datetime import datetime, timezone

import config

log = logging.getLogger(__name__)

_conn = None


def get_connection():
    global _conn
    if _conn is None:
        _conn = sqlite3.connect(config.DB_PATH)
        _conn.execute("PRAGMA journal_mode=WAL")
        init_tables(_conn)
    return _conn


def init_tables(conn):
    conn.executescript("""
        CREATE TABLE IF NOT EXISTS bench_log (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            timestamp TEXT NOT NULL,
            benchmark TEXT NOT NULL,
            strategy TEXT NOT NULL,
            divisor INTEGER,
            signed INTEGER NOT NULL,
            prime_limit INTEGER,
            iterations INTEGER NOT NULL,
            elapsed_ns INTEGER NOT NULL,
            ns_per_op REAL NOT NULL,
            checksum INTEGER NOT NULL,
            host TEXT
        );

        CREATE TABLE IF NOT EXISTS verify_log (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            timestamp TEXT NOT NULL,
            strategy TEXT NOT NULL,
            width INTEGER NOT NULL,
            spec TEXT NOT NULL,
            seed TEXT NOT NULL,
            checked INTEGER NOT NULL,
            mismatch_count INTEGER NOT NULL,
            first_mismatches TEXT,
            elapsed_ns INTEGER NOT NULL
        );

        CREATE TABLE IF NOT EXISTS check_log (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            timestamp TEXT NOT NULL,
            name TEXT NOT NULL,
            params TEXT NOT NULL,
            checked INTEGER NOT NULL,
            failure_count INTEGER NOT NULL,
            failures TEXT,
            elapsed_ns INTEGER NOT NULL
        );
    """)
    conn.commit()


def _now():
    return datetime.now(timezone.utc).isoformat()


def log_bench(reports, host=None):
    """Log one row per BenchReport."""
    conn = get_connection()
    ts = _now()
    conn.executemany(
        """INSERT INTO bench_log
           (timestamp, benchmark, strategy, divisor, signed, prime_limit,
            iterations, elapsed_ns, ns_per_op, checksum, host)
           VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)""",
        [
            (ts, r.benchmark, r.strategy, r.divisor, int(r.signed), r.limit,
             r.iterations, r.elapsed_ns, r.ns_per_op, r.checksum, host)
            for r in reports
        ],
    )
    conn.commit()
    log.info("Recorded %d benchmark row(s)", len(reports))


def log_sweep(report):
    """Log one row per strategy of a MismatchReport."""
    conn = get_connection()
    ts = _now()
    records = report.to_records()
    conn.executemany(
        """INSERT INTO verify_log
           (timestamp, strategy, width, spec, seed, checked, mismatch_count,
            first_mismatches, elapsed_ns)
           VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)""",
        [
            # seeds are 64-bit and SQLite integers are signed, so store text
            (ts, rec["strategy"], report.spec.width, json.dumps(rec["spec"]), str(rec["seed"]),
             rec["checked"], rec["mismatch_count"], json.dumps(rec["first_mismatches"]),
             rec["elapsed_ns"])
            for rec in records
        ],
    )
    conn.commit()
    log.info("Recorded sweep for %d strategy(ies)", len(records))


def log_check(report):
    """Log a minimality or inverse CheckReport."""
    conn = get_connection()
    conn.execute(
        """INSERT INTO check_log
           (timestamp, name, params, checked, failure_count, failures, elapsed_ns)
           VALUES (?, ?, ?, ?, ?, ?, ?)""",
        (_now(), report.name, json.dumps(report.params), report.checked,
         report.failure_count, json.dumps(report.failures), report.elapsed_ns),
    )
    conn.commit()


def get_bench_history(benchmark=None, limit=config.HISTORY_LIMIT):
    """Most recent benchmark rows as dicts, newest first."""
    conn = get_connection()
    sql = "SELECT * FROM bench_log"
    params = []
    if benchmark:
        sql += " WHERE benchmark = ?"
        params.append(benchmark)
    sql += " ORDER BY id DESC LIMIT ?"
    params.append(limit)
    cur = conn.execute(sql, params)
    cols = [c[0] for c in cur.description]
    return [dict(zip(cols, row)) for row in cur.fetchall()]


def get_verify_history(limit=config.HISTORY_LIMIT):
    conn = get_connection()
    cur = conn.execute("SELECT * FROM verify_log ORDER BY id DESC LIMIT ?", (limit,))
    cols = [c[0] for c in cur.description]
    rows = []
    for row in cur.fetchall():
        rec = dict(zip(cols, row))
        rec["spec"] = json.loads(rec["spec"])
        rec["first_mismatches"] = json.loads(rec["first_mismatches"] or "[]")
        rows.append(rec)
    return rows


def close():
    global _conn
    if _conn:
        _conn.close()
        _conn = None
