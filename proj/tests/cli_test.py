# Copyright 2026 xlcount contributors.
# SPDX-License-Identifier: Apache-2.0
"""End-to-end checks of the xlcount command line."""

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BINARY = None
ROOT = None


def run(*args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, timeout=600)


def schema(name):
    return json.loads((ROOT / "schemas" / f"{name}.json").read_text())


class CliTest(unittest.TestCase):
    def json_of(self, name, *args, code=0):
        proc = run(*args, "--json")
        self.assertEqual(proc.returncode, code, proc.stderr)
        doc = json.loads(proc.stdout)
        jsonschema.validate(doc, schema(name))
        return doc

    def files(self, which):
        base = ROOT / "data" / f"triangle{which}"
        return ["--n-file", str(base / "n.csv"), "--d-file", str(base / "d.csv"),
                "--exposure-file", str(base / "exposure.csv")]

    def test_validate(self):
        doc = self.json_of("validate", "validate", *self.files(1))
        self.assertTrue(doc["ok"])

        with tempfile.TemporaryDirectory() as tmp:
            bad = pathlib.Path(tmp) / "d.csv"
            lines = (ROOT / "data" / "triangle1" / "d.csv").read_text().splitlines()
            # Drop far more claims than the stock at (1,2)
            lines = ["1,2,500" if line.startswith("1,2,") else line for line in lines]
            bad.write_text("\n".join(lines) + "\n")
            args = self.files(1)
            args[3] = str(bad)
            doc = self.json_of("validate", "validate", *args, code=1)
            self.assertFalse(doc["ok"])
            self.assertIn("DropExceedsStock", {v["kind"] for v in doc["violations"]})

    def test_missing_file(self):
        proc = run("validate", "--n-file", "/nonexistent/n.csv", "--d-file", "/nonexistent/d.csv",
                   "--exposure-file", "/nonexistent/e.csv")
        self.assertEqual(proc.returncode, 2)
        self.assertTrue(proc.stderr.startswith("error: "))

    def test_usage_error(self):
        self.assertEqual(run("predict", "--example", "2", "--model", "gamma").returncode, 2)

    def test_estimate(self):
        doc = self.json_of("estimate", "estimate", "--example", "1")
        expected = [0.327, 0.28, 0.2, 0.117, 0.156, 0]
        for got, want in zip(doc["lambda_hat"], expected):
            self.assertAlmostEqual(got, want, delta=5e-4)
        self.assertAlmostEqual(doc["next_year_intensity"], 27.752, delta=5e-4)

    def test_fit(self):
        doc = self.json_of("fit", "fit", "--example", "2", "--joint")
        self.assertAlmostEqual(doc["p1"], 0.397, delta=2e-3)
        self.assertIn("joint", doc)
        doc = self.json_of("fit", "fit", "--example", "1")
        self.assertTrue(doc["degenerate"])
        self.assertEqual(doc["fallback"], "poisson")

    def test_predict(self):
        doc = self.json_of("predict", "predict", "--example", "2", "--model", "negbin")
        law = doc["predictions"][0]
        self.assertAlmostEqual(law["mean"], 30.243, delta=5e-4)
        self.assertAlmostEqual(law["variance"], 38.796, delta=0.15)
        doc = self.json_of("predict", "predict", "--example", "1", "--model", "negbin")
        self.assertEqual(doc["fallback"], "poisson")
        self.assertEqual(doc["predictions"][0]["model"], "poisson")
        doc = self.json_of("predict", "predict", "--example", "1", "--target", "cell", "5", "6")
        self.assertEqual(doc["predictions"][0]["law"]["kind"], "binomial+poisson")

    def test_compare(self):
        doc = self.json_of("compare", "compare", "--example", "2")
        self.assertAlmostEqual(doc["aic_poisson"], 119.875, delta=0.02)
        self.assertAlmostEqual(doc["aic_negbin"], 115.586, delta=0.02)
        self.assertEqual(doc["selected"], "negbin")
        doc = self.json_of("compare", "compare", "--example", "1")
        self.assertEqual(doc["selected"], "poisson")

    def test_bootstrap_repeatable(self):
        args = ("bootstrap", "--example", "2", "--sims", "1", "--seed", "7", "--json")
        first = run(*args)
        second = run(*args)
        self.assertEqual(first.returncode, 0, first.stderr)
        self.assertEqual(first.stdout, second.stdout)
        jsonschema.validate(json.loads(first.stdout), schema("bootstrap"))

    def test_bootstrap_threads(self):
        outputs = set()
        for threads in ("1", "4"):
            doc = self.json_of("bootstrap", "bootstrap", "--example", "1", "--model", "poisson",
                               "--sims", "5000", "--seed", "3", "--threads", threads,
                               "--target", "ultimate")
            outputs.add(json.dumps(doc, sort_keys=True))
        self.assertEqual(len(outputs), 1)

    def test_bootstrap_histogram_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "hist.csv"
            proc = run("bootstrap", "--example", "1", "--model", "poisson", "--sims", "2000",
                       "--seed", "1", "--hist", str(path))
            self.assertEqual(proc.returncode, 0, proc.stderr)
            lines = path.read_text().splitlines()
            self.assertEqual(lines[0], "k,count")
            self.assertEqual(sum(int(line.split(",")[1]) for line in lines[1:]), 2000)

    def test_bootstrap_rejects_upper_cell(self):
        proc = run("bootstrap", "--example", "1", "--sims", "10", "--target", "cell", "2", "3")
        self.assertEqual(proc.returncode, 1)
        self.assertIn("IndexOutsideLowerTriangle", proc.stderr)


if __name__ == "__main__":
    BINARY = sys.argv[1]
    ROOT = pathlib.Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
