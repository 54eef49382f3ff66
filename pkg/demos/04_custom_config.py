"""Describe a group in a config file and run the pipeline on it."""

# %% A single involution on T^6
# alpha reflects four coordinates; its 16 fixed 2-tori are each their own
# orbit, so the resolution adds 16 classes in degree 2.
import json

from kummer.cli import render_text, run
from kummer.config import parse_config, serialize_config

text = """
dimension = 6

[generator]
signs = "----++"
translation = ["0","0","0","0","0","0"]
"""
config = parse_config(text)
print(serialize_config(config))

# %% Text and JSON views of the same data
print(render_text(run("betti", config)))
print(json.dumps(run("check", config)["joyce_conditions"]["notes"]))

# %% A group that cannot be resolved this way
# Reflecting only two coordinates leaves codimension-2 fixed tori.  The
# checks report the failure; they do not raise.
bad = parse_config('dimension = 5\n[generator]\nsigns = "--+++"\n')
print(render_text(run("check", bad)))
