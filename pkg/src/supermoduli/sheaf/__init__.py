"""Two-chart model of weighted projective superspaces and their Cech cohomology."""
