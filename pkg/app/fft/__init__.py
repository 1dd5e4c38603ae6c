"""FFT datapath generators and reference transforms."""
