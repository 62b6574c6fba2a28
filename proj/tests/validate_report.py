import json
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

with tempfile.TemporaryDirectory() as d:
    for args in (["verify", "octonion"], ["verify", "split-algebra", "--tol", "0"], ["verify", "hardy", "--trials", "1"]):
        out = f"{d}/report.json"
        rc = subprocess.run([cli, *args, "--report", out], stdout=subprocess.DEVNULL).returncode
        with open(out) as f:
            report = json.load(f)
        jsonschema.validate(report, schema)
        assert rc == (0 if report["pass"] else 1), (args, rc)
        assert report["pass"] == all(s["pass"] for s in report["suites"])
        print("valid:", " ".join(args))
