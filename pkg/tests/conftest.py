import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def class_records_1e4():
    """ClassNumberRecord for every fundamental discriminant 5 <= d <= 1e4."""
    import quadclass.forms as forms
    import quadclass.lfun as lfun

    records = {}
    for d in lfun.fundamental_discriminants(10**4 + 1):
        d = int(d)
        records[d] = forms.class_number(d)
    return records


@pytest.fixture(scope="session")
def family_mask_1e4():
    """Squarefree mask for the 4n^2+1 family up to n = 1e4."""
    import quadclass.family as family

    return family.squarefree_mask(10**4)
