# Seeded verification suites
