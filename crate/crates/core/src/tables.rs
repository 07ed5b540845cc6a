//! Hard-coded coefficient tables for the 32-point approximate transform.

/// Rows of the four 16×16 blocks `[[A0, A1], [A2, A3]]`, one row per line,
/// entries separated by whitespace, written as `a`, `bi` or `a±bi`.
pub(crate) const ADFT32_BLOCK_0: &str = "\
1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n\
1 1 1 1-1i 1-1i 1-1i -1i -1i -1i -1i -1i -1-1i -1-1i -1-1i -1 -1\n\
1 1 1-1i -1i -1i -1i -1-1i -1 -1 -1 -1+1i 1i 1i 1i 1+1i 1\n\
1 1-1i -1i -1i -1-1i -1 -1 -1+1i 1i 1+1i 1 1 1-1i -1i -1i -1-1i\n\
1 1-1i -1i -1-1i -1 -1+1i 1i 1+1i 1 1-1i -1i -1-1i -1 -1+1i 1i 1+1i\n\
1 1-1i -1i -1 -1+1i 1i 1 1-1i -1i -1-1i -1 1i 1+1i 1 -1i -1-1i\n\
1 -1i -1-1i -1 1i 1 1-1i -1i -1 1i 1+1i 1 -1i -1 -1+1i 1i\n\
1 -1i -1 -1+1i 1+1i 1-1i -1i -1 1i 1 -1i -1-1i -1+1i 1+1i 1 -1i\n\
1 -1i -1 1i 1 -1i -1 1i 1 -1i -1 1i 1 -1i -1 1i\n\
1 -1i -1 1+1i 1-1i -1-1i 1i 1 -1i -1 1i 1-1i -1-1i -1+1i 1 -1i\n\
1 -1i -1+1i 1 -1i -1 1+1i -1i -1 1i 1-1i -1 1i 1 -1-1i 1i\n\
1 -1-1i 1i 1 -1-1i 1i 1 -1-1i 1i 1-1i -1 1i 1-1i -1 1i 1-1i\n\
1 -1-1i 1i 1-1i -1 1+1i -1i -1+1i 1 -1-1i 1i 1-1i -1 1+1i -1i -1+1i\n\
1 -1-1i 1i -1i -1+1i 1 -1 1+1i -1i -1+1i 1 -1 1+1i -1i 1i 1-1i\n\
1 -1 1+1i -1i 1i -1i -1+1i 1 -1 1 -1-1i 1i -1i 1i 1-1i -1\n\
1 -1 1 -1-1i 1+1i -1-1i 1i -1i 1i -1i 1i 1-1i -1+1i 1-1i -1 1\n\
";

pub(crate) const ADFT32_BLOCK_1: &str = "\
1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n\
-1 -1 -1 -1+1i -1+1i -1+1i 1i 1i 1i 1i 1i 1+1i 1+1i 1+1i 1 1\n\
1 1 1-1i -1i -1i -1i -1-1i -1 -1 -1 -1+1i 1i 1i 1i 1+1i 1\n\
-1 -1+1i 1i 1i 1+1i 1 1 1-1i -1i -1-1i -1 -1 -1+1i 1i 1i 1+1i\n\
1 1-1i -1i -1-1i -1 -1+1i 1i 1+1i 1 1-1i -1i -1-1i -1 -1+1i 1i 1+1i\n\
-1 -1+1i 1i 1 1-1i -1i -1 -1+1i 1i 1+1i 1 -1i -1-1i -1 1i 1+1i\n\
1 -1i -1-1i -1 1i 1 1-1i -1i -1 1i 1+1i 1 -1i -1 -1+1i 1i\n\
-1 1i 1 1-1i -1-1i -1+1i 1i 1 -1i -1 1i 1+1i 1-1i -1-1i -1 1i\n\
1 -1i -1 1i 1 -1i -1 1i 1 -1i -1 1i 1 -1i -1 1i\n\
-1 1i 1 -1-1i -1+1i 1+1i -1i -1 1i 1 -1i -1+1i 1+1i 1-1i -1 1i\n\
1 -1i -1+1i 1 -1i -1 1+1i -1i -1 1i 1-1i -1 1i 1 -1-1i 1i\n\
-1 1+1i -1i -1 1+1i -1i -1 1+1i -1i -1+1i 1 -1i -1+1i 1 -1i -1+1i\n\
1 -1-1i 1i 1-1i -1 1+1i -1i -1+1i 1 -1-1i 1i 1-1i -1 1+1i -1i -1+1i\n\
-1 1+1i -1i 1i 1-1i -1 1 -1-1i 1i 1-1i -1 1 -1-1i 1i -1i -1+1i\n\
1 -1 1+1i -1i 1i -1i -1+1i 1 -1 1 -1-1i 1i -1i 1i 1-1i -1\n\
-1 1 -1 1+1i -1-1i 1+1i -1i 1i -1i 1i -1i -1+1i 1-1i -1+1i 1 -1\n\
";

pub(crate) const ADFT32_BLOCK_2: &str = "\
1 -1 1 -1 1 -1 1 -1 1 -1 1 -1 1 -1 1 -1\n\
1 -1 1 -1+1i 1-1i -1+1i -1i 1i -1i 1i -1i 1+1i -1-1i 1+1i -1 1\n\
1 -1 1-1i 1i -1i 1i -1-1i 1 -1 1 -1+1i -1i 1i -1i 1+1i -1\n\
1 -1+1i -1i 1i -1-1i 1 -1 1-1i 1i -1-1i 1 -1 1-1i 1i -1i 1+1i\n\
1 -1+1i -1i 1+1i -1 1-1i 1i -1-1i 1 -1+1i -1i 1+1i -1 1-1i 1i -1-1i\n\
1 -1+1i -1i 1 -1+1i -1i 1 -1+1i -1i 1+1i -1 -1i 1+1i -1 -1i 1+1i\n\
1 1i -1-1i 1 1i -1 1-1i 1i -1 -1i 1+1i -1 -1i 1 -1+1i -1i\n\
1 1i -1 1-1i 1+1i -1+1i -1i 1 1i -1 -1i 1+1i -1+1i -1-1i 1 1i\n\
1 1i -1 -1i 1 1i -1 -1i 1 1i -1 -1i 1 1i -1 -1i\n\
1 1i -1 -1-1i 1-1i 1+1i 1i -1 -1i 1 1i -1+1i -1-1i 1-1i 1 1i\n\
1 1i -1+1i -1 -1i 1 1+1i 1i -1 -1i 1-1i 1 1i -1 -1-1i -1i\n\
1 1+1i 1i -1 -1-1i -1i 1 1+1i 1i -1+1i -1 -1i 1-1i 1 1i -1+1i\n\
1 1+1i 1i -1+1i -1 -1-1i -1i 1-1i 1 1+1i 1i -1+1i -1 -1-1i -1i 1-1i\n\
1 1+1i 1i 1i -1+1i -1 -1 -1-1i -1i 1-1i 1 1 1+1i 1i 1i -1+1i\n\
1 1 1+1i 1i 1i 1i -1+1i -1 -1 -1 -1-1i -1i -1i -1i 1-1i 1\n\
1 1 1 1+1i 1+1i 1+1i 1i 1i 1i 1i 1i -1+1i -1+1i -1+1i -1 -1\n\
";

pub(crate) const ADFT32_BLOCK_3: &str = "\
1 -1 1 -1 1 -1 1 -1 1 -1 1 -1 1 -1 1 -1\n\
-1 1 -1 1-1i -1+1i 1-1i 1i -1i 1i -1i 1i -1-1i 1+1i -1-1i 1 -1\n\
1 -1 1-1i 1i -1i 1i -1-1i 1 -1 1 -1+1i -1i 1i -1i 1+1i -1\n\
-1 1-1i 1i -1i 1+1i -1 1 -1+1i -1i 1+1i -1 1 -1+1i -1i 1i -1-1i\n\
1 -1+1i -1i 1+1i -1 1-1i 1i -1-1i 1 -1+1i -1i 1+1i -1 1-1i 1i -1-1i\n\
-1 1-1i 1i -1 1-1i 1i -1 1-1i 1i -1-1i 1 1i -1-1i 1 1i -1-1i\n\
1 1i -1-1i 1 1i -1 1-1i 1i -1 -1i 1+1i -1 -1i 1 -1+1i -1i\n\
-1 -1i 1 -1+1i -1-1i 1-1i 1i -1 -1i 1 1i -1-1i 1-1i 1+1i -1 -1i\n\
1 1i -1 -1i 1 1i -1 -1i 1 1i -1 -1i 1 1i -1 -1i\n\
-1 -1i 1 1+1i -1+1i -1-1i -1i 1 1i -1 -1i 1-1i 1+1i -1+1i -1 -1i\n\
1 1i -1+1i -1 -1i 1 1+1i 1i -1 -1i 1-1i 1 1i -1 -1-1i -1i\n\
-1 -1-1i -1i 1 1+1i 1i -1 -1-1i -1i 1-1i 1 1i -1+1i -1 -1i 1-1i\n\
1 1+1i 1i -1+1i -1 -1-1i -1i 1-1i 1 1+1i 1i -1+1i -1 -1-1i -1i 1-1i\n\
-1 -1-1i -1i -1i 1-1i 1 1 1+1i 1i -1+1i -1 -1 -1-1i -1i -1i 1-1i\n\
1 1 1+1i 1i 1i 1i -1+1i -1 -1 -1 -1-1i -1i -1i -1i 1-1i 1\n\
-1 -1 -1 -1-1i -1-1i -1-1i -1i -1i -1i -1i -1i 1-1i 1-1i 1-1i 1 1\n\
";

/// Non-zero positions of the eight sparse stages, 1-based `(row, col)`,
/// grouped by stage and coefficient.
pub(crate) const ADFT32_STAGES_TABLE: &str = "\
W1 +1: (1,1), (1,17), (2,2), (2,16), (3,3), (3,15), (4,4), (4,14), (5,5), (5,13), (6,6), (6,12), (7,7), (7,11), (8,8), (8,10), (9,9), (10,8), (11,7), (12,6), (13,5), (14,4), (15,3), (16,2), (17,1), (18,18), (18,32), (19,19), (19,31), (20,20), (20,30), (21,21), (21,29), (22,22), (22,28), (23,23), (23,27), (24,24), (24,26), (25,25), (26,24), (27,23), (28,22), (29,21), (30,20), (31,19), (32,18)\n\
W1 -1: (10,10), (11,11), (12,12), (13,13), (14,14), (15,15), (16,16), (17,17), (26,26), (27,27), (28,28), (29,29), (30,30), (31,31), (32,32)\n\
W2 +1: (1,1), (2,2), (2,18), (3,3), (3,19), (4,4), (4,20), (5,5), (5,21), (6,6), (6,22), (7,7), (7,23), (8,8), (8,24), (9,9), (9,25), (10,10), (10,26), (11,11), (11,27), (12,12), (12,28), (13,13), (13,29), (14,14), (14,30), (15,15), (15,31), (16,16), (16,32), (17,17), (18,2), (19,3), (20,4), (21,5), (22,6), (23,7), (24,8), (25,9), (26,10), (27,11), (28,12), (29,13), (30,14), (31,15), (32,16)\n\
W2 -1: (18,18), (19,19), (20,20), (21,21), (22,22), (23,23), (24,24), (25,25), (26,26), (27,27), (28,28), (29,29), (30,30), (31,31), (32,32)\n\
W3 +1: (1,1), (1,9), (2,2), (2,8), (3,3), (3,7), (4,4), (4,6), (5,5), (6,4), (7,3), (8,2), (9,1), (10,10), (10,16), (11,11), (11,15), (12,12), (12,14), (13,13), (14,12), (15,11), (16,10), (17,17), (18,18), (19,19), (20,20), (21,21), (22,22), (23,23), (24,24), (25,25), (26,26), (27,27), (28,28), (29,29), (30,30), (31,31), (32,32)\n\
W3 -1: (6,6), (7,7), (8,8), (9,9), (14,14), (15,15), (16,16)\n\
W4 +1: (1,1), (1,5), (2,2), (2,4), (3,3), (4,2), (5,1), (6,6), (7,7), (7,9), (8,8), (9,7), (10,10), (11,11), (11,13), (12,12), (13,11), (14,14), (14,16), (15,15), (16,14), (17,17), (17,29), (18,18), (19,19), (20,20), (21,21), (21,25), (22,22), (23,23), (24,24), (25,21), (26,26), (27,27), (28,28), (29,17), (30,30), (31,31), (32,32)\n\
W4 -1: (4,4), (5,5), (9,9), (13,13), (16,16), (25,25), (29,29)\n\
W5 +1: (1,1), (1,3), (2,2), (3,1), (4,4), (4,5), (5,4), (6,6), (6,9), (7,7), (7,8), (8,7), (9,6), (10,10), (10,13), (11,11), (11,12), (12,11), (13,10), (14,14), (14,15), (15,14), (16,16), (17,31), (18,18), (19,19), (19,25), (20,20), (20,22), (20,24), (21,21), (21,23), (22,20), (23,21), (24,20), (25,19), (26,26), (27,27), (27,29), (28,28), (28,30), (28,32), (29,27), (30,28), (31,17), (31,31), (32,28)\n\
W5 -1: (3,3), (5,5), (8,8), (9,9), (12,12), (13,13), (15,15), (17,17), (22,22), (23,23), (24,24), (25,25), (29,29), (30,30), (32,32)\n\
W6 +1: (1,1), (1,2), (2,1), (3,3), (4,4), (5,5), (6,6), (7,7), (8,8), (9,9), (10,10), (11,11), (12,12), (13,13), (14,14), (15,15), (16,16), (17,17), (18,18), (18,22), (19,19), (20,20), (20,21), (21,20), (22,18), (23,23), (24,18), (24,24), (25,25), (26,26), (26,30), (27,27), (28,28), (28,31), (29,29), (30,26), (31,28), (32,26), (32,32)\n\
W6 -1: (2,2), (18,24), (21,21), (22,22), (26,32), (30,30), (31,31)\n\
W7 +1: (1,1), (2,2), (3,3), (4,4), (5,5), (6,6), (7,7), (8,8), (9,9), (10,10), (11,11), (12,12), (13,13), (14,14), (15,15), (16,16), (17,17), (17,30), (18,18), (18,25), (19,24), (20,20), (21,21), (22,22), (22,23), (23,22), (24,19), (24,24), (25,18), (26,26), (26,27), (27,26), (28,28), (29,29), (29,32), (30,17), (31,31), (32,29)\n\
W7 -1: (19,19), (23,23), (25,25), (27,27), (30,30), (32,32)\n\
W8 +1: (1,1), (2,28), (3,7), (5,4), (6,26), (9,3), (11,9), (15,8), (17,2), (19,8), (23,9), (25,3), (28,26), (29,4), (31,7), (32,28)\n\
W8 -1: (4,29), (7,6), (8,17), (10,30), (12,27), (13,5), (14,32), (16,31), (18,31), (20,32), (21,5), (22,27), (24,30), (26,17), (27,6), (30,29)\n\
W8 +j: (5,14), (13,15), (15,12), (18,21), (20,19), (22,25), (23,13), (24,22), (25,16), (26,23), (27,10), (28,18), (30,24), (31,11), (32,20)\n\
W8 -j: (2,20), (3,11), (4,24), (6,18), (7,10), (8,23), (9,16), (10,22), (11,13), (12,25), (14,19), (16,21), (19,12), (21,15), (29,14)\n\
";
