"""End-to-end tests of the confarc executable.

Run by ctest with CONFARC_BIN, CONFARC_DATA and CONFARC_SCHEMA set.
"""

import csv
import io
import json
import math
import os
import subprocess
import tempfile
import unittest

import jsonschema

BIN = os.environ["CONFARC_BIN"]
DATA = os.environ["CONFARC_DATA"]
SCHEMA = os.environ["CONFARC_SCHEMA"]

COMMANDS = ["invariants", "halfmeasure", "angle", "sphereavg", "export-embedding", "check"]
TRI_INDEX = ["012", "013", "014", "023", "024", "034", "123", "124", "134", "234"]


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True, timeout=600)


def curve(name):
    return os.path.join(DATA, name + ".json")


def csv_table(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    summary = dict(l[2:].split("=", 1) for l in text.splitlines() if l.startswith("# "))
    return rows[0], rows[1:], summary


def json_table(*args):
    r = run(*args, "--format", "json")
    assert r.returncode in (0, 1), r.stderr
    return json.loads(r.stdout)


class ExitCodes(unittest.TestCase):
    def test_help(self):
        self.assertEqual(run("--help").returncode, 0)

    def test_malformed_json(self):
        r = run("--curve", curve("malformed"), "invariants")
        self.assertEqual(r.returncode, 2)
        self.assertIn("malformed", r.stderr)

    def test_missing_file(self):
        self.assertEqual(run("--curve", "/nonexistent.json", "invariants").returncode, 2)

    def test_bad_options(self):
        self.assertEqual(run("--curve", curve("helix"), "--samples", "4", "invariants").returncode, 2)
        self.assertEqual(run("--curve", curve("helix"), "--tol", "0", "invariants").returncode, 2)
        self.assertEqual(run("--curve", curve("helix"), "--format", "xml", "invariants").returncode, 2)
        self.assertEqual(run("--curve", curve("helix")).returncode, 2)
        self.assertEqual(run("invariants").returncode, 2)

    def test_numerical_failure(self):
        # The full ellipse has vertices, where osculating spheres do not exist.
        r = run("--curve", curve("ellipse"), "--samples", "16", "sphereavg")
        self.assertEqual(r.returncode, 3)
        self.assertIn("vertex", r.stderr)


class Invariants(unittest.TestCase):
    def test_helix_total(self):
        r = run("--curve", curve("helix"), "--samples", "100", "invariants")
        self.assertEqual(r.returncode, 0)
        header, rows, summary = csv_table(r.stdout)
        self.assertEqual(header, ["t", "s", "rho", "drho_dt", "kappa", "tau", "T", "is_vertex"])
        self.assertEqual(len(rows), 100)
        self.assertAlmostEqual(float(rows[-1][0]), 2 * math.pi, places=12)
        self.assertLess(abs(float(rows[-1][2]) - math.pi * math.sqrt(2)), 1e-6)
        self.assertLess(abs(float(summary["rho_total"]) - math.pi * math.sqrt(2)), 1e-6)
        for row in rows:
            self.assertAlmostEqual(float(row[4]), 0.5, places=12)
            self.assertAlmostEqual(float(row[6]), 1.0, places=9)
            self.assertEqual(row[7], "false")

    def test_circle_is_all_vertex(self):
        r = run("--curve", curve("circle"), "invariants")
        self.assertEqual(r.returncode, 0)
        _, rows, _ = csv_table(r.stdout)
        for row in rows:
            self.assertLess(abs(float(row[2])), 1e-9)
            self.assertEqual(row[7], "true")
            self.assertEqual(row[6], "nan")

    def test_ellipse_vertices(self):
        d = json_table("--curve", curve("ellipse"), "--samples", "9", "invariants")
        flags = [row[7] for row in d["rows"]]
        # t = k π / 4: vertices at even k.
        self.assertEqual(flags, [k % 2 == 0 for k in range(9)])


class HalfMeasure(unittest.TestCase):
    def test_helix_convergence(self):
        d = json_table("--curve", curve("helix"), "--samples", "4096", "halfmeasure")
        self.assertEqual([row[0] for row in d["rows"]], [16 * 2**k for k in range(9)])
        self.assertLess(d["rows"][-1][4], 1e-3)
        self.assertGreaterEqual(d["summary"]["fitted_order"], 0.9)
        self.assertLess(d["summary"]["relative_difference"], 1e-8)
        self.assertFalse(d["summary"]["noise_level"])

    def test_circle_sums_are_noise(self):
        d = json_table("--curve", curve("circle"), "--samples", "256", "halfmeasure")
        self.assertTrue(d["summary"]["noise_level"])
        for row in d["rows"]:
            self.assertLess(row[1], 1e-5)
            self.assertIsNone(row[4])

    def test_vertex_arc_is_finite(self):
        d = json_table("--curve", curve("ellipse_arc"), "--samples", "1024", "halfmeasure")
        for row in d["rows"]:
            for v in row:
                self.assertTrue(v is not None and math.isfinite(v))


class Angle(unittest.TestCase):
    def test_helix_ratio(self):
        d = json_table("--curve", curve("helix"), "--samples", "2000", "angle")
        for row in d["rows"]:
            t1, t2, theta, theta_e, root, drho, ratio = row
            self.assertLess(abs(theta - theta_e), 1e-8)
            self.assertLess(abs(ratio - 1), 1e-3)


class SphereAverage(unittest.TestCase):
    def test_helix_ratio(self):
        d = json_table("--curve", curve("helix"), "--samples", "64", "sphereavg")
        angles, average, average_quad, rho, ratio, expected, rel = d["rows"][0]
        self.assertEqual(angles, 64)
        self.assertLess(abs(rho - math.pi * math.sqrt(2)), 1e-9)
        self.assertLess(rel, 1e-2)
        self.assertAlmostEqual(expected, 0.40981935353194217783, places=12)


class Embedding(unittest.TestCase):
    def test_circle_points(self):
        d = json_table("--curve", curve("twisted_cubic"), "--samples", "32", "export-embedding")
        self.assertEqual(d["columns"], ["t"] + ["p" + i for i in TRI_INDEX])
        prev = None
        for row in d["rows"]:
            p = dict(zip(TRI_INDEX, row[1:]))
            square = sum((1 if k[0] == "0" else -1) * v * v for k, v in p.items())
            self.assertLess(abs(square - 1), 1e-9)
            # One of the Plücker relations: p012 p034 - p013 p024 + p014 p023 = 0.
            self.assertLess(abs(p["012"] * p["034"] - p["013"] * p["024"] + p["014"] * p["023"]), 1e-9)
            if prev is not None:
                self.assertGreater(sum(a * b for a, b in zip(prev, row[1:])), 0)
            prev = row[1:]


class Check(unittest.TestCase):
    def test_helix_passes(self):
        r = run("--curve", curve("helix"), "--seed", "42", "check")
        self.assertEqual(r.returncode, 0, r.stdout)
        _, rows, summary = csv_table(r.stdout)
        self.assertTrue(all(row[1] == "pass" for row in rows))
        self.assertEqual(summary["all_passed"], "true")

    def test_corrupted_signature_fails(self):
        r = run("--curve", curve("helix"), "--seed", "42", "check", "--debug-corrupt-signature")
        self.assertEqual(r.returncode, 1)
        _, rows, _ = csv_table(r.stdout)
        status = {row[0]: row[1] for row in rows}
        self.assertEqual(status["length_element_identity"], "fail")

    def test_circle_skips_vertex_checks(self):
        r = run("--curve", curve("circle"), "check")
        self.assertEqual(r.returncode, 0, r.stdout)
        _, rows, _ = csv_table(r.stdout)
        status = {row[0]: row[1] for row in rows}
        self.assertNotIn("fail", status.values())
        for name in ["length_element_identity", "sphere_curve_identities", "sphere_average", "sphere_closure"]:
            self.assertEqual(status[name], "skipped")


class Output(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with open(SCHEMA) as f:
            cls.schema = json.load(f)
        jsonschema.Draft202012Validator.check_schema(cls.schema)

    def args(self, command):
        name = "ellipse_arc" if command == "halfmeasure" else "twisted_cubic"
        samples = "64" if command == "halfmeasure" else "16"
        return ["--curve", curve(name), "--samples", samples, command]

    def test_schema(self):
        for command in COMMANDS:
            with self.subTest(command=command):
                d = json_table(*self.args(command))
                jsonschema.validate(d, self.schema, cls=jsonschema.Draft202012Validator)
                self.assertEqual(d["command"], command)

    def test_schema_rejects_wrong_columns(self):
        d = json_table(*self.args("invariants"))
        d["columns"] = d["columns"][:-1]
        with self.assertRaises(jsonschema.ValidationError):
            jsonschema.validate(d, self.schema, cls=jsonschema.Draft202012Validator)

    def test_csv_matches_json(self):
        for command in COMMANDS:
            with self.subTest(command=command):
                r = run(*self.args(command))
                header, rows, _ = csv_table(r.stdout)
                d = json_table(*self.args(command))
                self.assertEqual(header, d["columns"])
                self.assertEqual(len(rows), len(d["rows"]))

    def test_deterministic(self):
        for command in COMMANDS:
            for fmt in ["csv", "json"]:
                with self.subTest(command=command, fmt=fmt):
                    a = run(*self.args(command), "--format", fmt)
                    b = run(*self.args(command), "--format", fmt)
                    self.assertEqual(a.stdout, b.stdout)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.json")
            r = run(*self.args("angle"), "--format", "json", "--out", path)
            self.assertEqual(r.returncode, 0)
            self.assertEqual(r.stdout, "")
            with open(path) as f:
                self.assertEqual(f.read(), run(*self.args("angle"), "--format", "json").stdout)

    def test_seed_changes_check_draws(self):
        a = json_table("--curve", curve("helix"), "--seed", "1", "check")
        b = json_table("--curve", curve("helix"), "--seed", "2", "check")
        self.assertTrue(a["summary"]["all_passed"] and b["summary"]["all_passed"])
        self.assertNotEqual([r[4] for r in a["rows"]], [r[4] for r in b["rows"]])


if __name__ == "__main__":
    unittest.main(verbosity=2)
