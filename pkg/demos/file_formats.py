"""Write an instance, solve it, and check the certificate, all through files.

Equivalent shell session::

    rainbowtx gen --kind random-dirac --n 9 --seed 1 --out d.rgc
    rainbowtx solve --problem hamilton --in d.rgc --cert d.cert
    rainbowtx verify --problem hamilton --in d.rgc --cert d.cert

Run with ``python3 demos/file_formats.py``.
"""

import json
import tempfile
from pathlib import Path

from rainbowtx.cli import run_cli

with tempfile.TemporaryDirectory() as tmp:
    inst, cert = Path(tmp, "d.rgc"), Path(tmp, "d.cert")
    print("gen    ->", run_cli(["gen", "--kind", "random-dirac", "--n", "9", "--seed", "1", "--out", str(inst)]))
    print(inst.read_text().splitlines()[:6], "...")
    print("solve  ->", run_cli(["solve", "--problem", "hamilton", "--in", str(inst), "--cert", str(cert)]))
    print("verify ->", run_cli(["verify", "--problem", "hamilton", "--in", str(inst), "--cert", str(cert)]))

    # Tamper with one color and verify again: exit code 1 with the reason.
    body = json.loads(cert.read_text())
    body["edges"][0][2] = body["edges"][1][2]
    cert.write_text(json.dumps(body))
    print("verify ->", run_cli(["verify", "--problem", "hamilton", "--in", str(inst), "--cert", str(cert)]))
