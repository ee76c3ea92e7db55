"""Industrial dashboard prototype generator.

Turns natural-language requirements into validated dashboard documents:
task planning over a dependency DAG, parallel agent execution, seeded data
simulation, two-level layout arrangement, palette/embellishment styling,
rule-based evaluation, and deterministic SVG rendering.
"""

__version__ = "0.1.0"
