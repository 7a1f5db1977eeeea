import pytest

# Published reference values: n -> (P_tun to 6 digits, relative error of the closed form)
REFERENCE_TABLE = {
    10: (0.0601438, 1.323e-5),
    20: (0.0483977, 2.528e-6),
    50: (0.0360132, 2.534e-7),
    100: (0.0286973, 4.250e-8),
    200: (0.0228302, 6.975e-9),
    400: (0.0181454, 1.130e-9),
    500: (0.0168499, 6.276e-10),
    800: (0.0144138, 1.815e-10),
}


@pytest.fixture(scope="session")
def error_table():
    """Oracle-vs-expansion rows for the tabulated n, computed once, with timing."""
    import time

    from qhotunnel.asymptotics import relative_error_table

    t0 = time.perf_counter()
    rows = relative_error_table(sorted(REFERENCE_TABLE), tol=1e-13)
    elapsed = time.perf_counter() - t0
    return rows, elapsed
