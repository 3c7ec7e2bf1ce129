# qrlab - residue discrepancy of random hyperelliptic curves over subsets of F_q
