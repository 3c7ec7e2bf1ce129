# Tests for qrlab
