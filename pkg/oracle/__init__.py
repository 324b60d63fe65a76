from oracle.verify import OracleReport, is_g_inverse, one_inverse_oracle, oracle_rank
