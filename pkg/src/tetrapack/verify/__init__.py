"""Whole-packing certification: candidates, pair checks, intervals in x, census, centers."""

from .candidates import Candidate, CandidateList, enumerate_candidates
from .census import ContactCensus, contact_census
from .centers import InversionCenterReport, NoInversion, inversion_center_report
from .interval import IntervalCertificate, verify_family_interval
from .pipeline import PairVerdict, VerificationReport, packing_fraction, verify_packing

__all__ = [
    "Candidate",
    "CandidateList",
    "ContactCensus",
    "IntervalCertificate",
    "InversionCenterReport",
    "NoInversion",
    "PairVerdict",
    "VerificationReport",
    "contact_census",
    "enumerate_candidates",
    "inversion_center_report",
    "packing_fraction",
    "verify_family_interval",
    "verify_packing",
]
