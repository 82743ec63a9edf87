"""Moebius-convolution partitions, exponential sums and the zeta-zero explicit formula."""
