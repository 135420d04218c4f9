"""Shared test configuration.

Hypothesis deadlines are disabled: the exact-arithmetic paths have very
uneven per-example cost (a Bareiss elimination inside a property is orders
of magnitude slower than a series multiply) and deadline flakiness would
only add noise.
"""

from hypothesis import settings

settings.register_profile("polyloop", deadline=None, max_examples=60)
settings.load_profile("polyloop")
