"""Shared packet fixtures.

Table construction does quadrature-free closed-form work only, but the
suite reuses the same handful of packets everywhere, so build each once
per session.
"""

import pytest

from diracpacket import PacketSpec, build_tables


@pytest.fixture(scope="session")
def tables_u92_n20():
    """Uranium-like packet at the shell used for most quantitative checks."""
    return build_tables(PacketSpec(Z=92, N=20, sigma_g=2.0))


@pytest.fixture(scope="session")
def tables_u92_n40():
    return build_tables(PacketSpec(Z=92, N=40, sigma_g=2.0))


@pytest.fixture(scope="session")
def tables_u92_n4():
    """Small, strongly relativistic packet; cheap enough for brute-force oracles."""
    return build_tables(PacketSpec(Z=92, N=4, sigma_g=0.8))


@pytest.fixture(scope="session")
def tables_h_n20():
    return build_tables(PacketSpec(Z=1, N=20, sigma_g=2.0))
