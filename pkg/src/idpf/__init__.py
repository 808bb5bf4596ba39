"""Interdependent-privacy text filtering toolkit.

Subpackages: ``match_engine`` (keyword matching strategies), ``vocab``
(category vocabularies), ``policy`` (SRB/ORB/SRW settings model),
``service`` (HTTP filtering API), ``audit`` (permission dataset
statistics), and ``bench`` (matching benchmarks).
"""

__version__ = "0.1.0"
