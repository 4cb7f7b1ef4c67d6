"""Universal deformation of the weighted projective superline."""
