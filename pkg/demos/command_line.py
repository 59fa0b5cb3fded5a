"""
From the command line
=====================

The bundled documents can be fed to ``qav`` directly; this runs the same
commands in-process and prints the summaries.
"""
import tempfile
from pathlib import Path

from qav.cli import main
from qav.document import fixture_path

out = Path(tempfile.mkdtemp())
main(["analyze", str(fixture_path("ceva")), "--json", str(out / "ceva.json")])
main(["covers", str(fixture_path("four_lines")), "--orders", "3,3,3,3", "--json", str(out / "four.json")])
main(["milnor", str(fixture_path("ceva")), "--json", str(out / "milnor.json")])
print((out / "four.json").read_text()[:400])
