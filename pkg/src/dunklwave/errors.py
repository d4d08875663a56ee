"""Error types shared across the transform stack."""


class DecayError(ValueError):
    """Input decays too slowly for the requested truncated integral."""


class AdmissibilityError(ValueError):
    """Candidate generator fails the wavelet admissibility requirements."""
