#pragma once

#include <string>

#include "unimix/errors.hpp"
#include "unimix/model.hpp"

namespace unimix {

// Published rejection frequencies (1000 replications, alpha = 0.05) that the
// simulation engine is checked against.  Bundled read-only; the same tables
// ship as CSV files under data/ for external tooling.

inline const std::string& bundled_reference_csv(ScenarioCase case_id) {
  static const std::string table_i =
      "case,method,m0,rule,gamma,frequency\n"
      "i,LRT,,asymptotic-lrt,0,0.055\n"
      "i,LRT,,asymptotic-lrt,0.5,0.115\n"
      "i,LRT,,asymptotic-lrt,1,0.324\n"
      "i,LRT,,asymptotic-lrt,2,0.779\n"
      "i,LRT,,asymptotic-lrt,4,0.998\n"
      "i,SLRT,0.4,universal,0,0.001\n"
      "i,SLRT,0.4,universal,0.5,0.005\n"
      "i,SLRT,0.4,universal,1,0.016\n"
      "i,SLRT,0.4,universal,2,0.162\n"
      "i,SLRT,0.4,universal,4,0.767\n"
      "i,SLRT,0.4,asymptotic-slrt,0,0.026\n"
      "i,SLRT,0.4,asymptotic-slrt,0.5,0.055\n"
      "i,SLRT,0.4,asymptotic-slrt,1,0.143\n"
      "i,SLRT,0.4,asymptotic-slrt,2,0.462\n"
      "i,SLRT,0.4,asymptotic-slrt,4,0.891\n"
      "i,SLRT,0.5,universal,0,0.002\n"
      "i,SLRT,0.5,universal,0.5,0.007\n"
      "i,SLRT,0.5,universal,1,0.024\n"
      "i,SLRT,0.5,universal,2,0.218\n"
      "i,SLRT,0.5,universal,4,0.847\n"
      "i,SLRT,0.5,asymptotic-slrt,0,0.026\n"
      "i,SLRT,0.5,asymptotic-slrt,0.5,0.056\n"
      "i,SLRT,0.5,asymptotic-slrt,1,0.164\n"
      "i,SLRT,0.5,asymptotic-slrt,2,0.504\n"
      "i,SLRT,0.5,asymptotic-slrt,4,0.913\n"
      "i,SLRT,0.6,universal,0,0.002\n"
      "i,SLRT,0.6,universal,0.5,0.009\n"
      "i,SLRT,0.6,universal,1,0.030\n"
      "i,SLRT,0.6,universal,2,0.256\n"
      "i,SLRT,0.6,universal,4,0.877\n"
      "i,SLRT,0.6,asymptotic-slrt,0,0.030\n"
      "i,SLRT,0.6,asymptotic-slrt,0.5,0.054\n"
      "i,SLRT,0.6,asymptotic-slrt,1,0.155\n"
      "i,SLRT,0.6,asymptotic-slrt,2,0.488\n"
      "i,SLRT,0.6,asymptotic-slrt,4,0.930\n";
  static const std::string table_ii =
      "case,method,m0,rule,gamma,frequency\n"
      "ii,LRT,,asymptotic-lrt,0,0.057\n"
      "ii,LRT,,asymptotic-lrt,0.5,0.091\n"
      "ii,LRT,,asymptotic-lrt,1,0.243\n"
      "ii,LRT,,asymptotic-lrt,2,0.749\n"
      "ii,LRT,,asymptotic-lrt,4,0.998\n"
      "ii,SLRT,0.4,universal,0,0.003\n"
      "ii,SLRT,0.4,universal,0.5,0.007\n"
      "ii,SLRT,0.4,universal,1,0.015\n"
      "ii,SLRT,0.4,universal,2,0.159\n"
      "ii,SLRT,0.4,universal,4,0.772\n"
      "ii,SLRT,0.4,asymptotic-slrt,0,0.031\n"
      "ii,SLRT,0.4,asymptotic-slrt,0.5,0.043\n"
      "ii,SLRT,0.4,asymptotic-slrt,1,0.133\n"
      "ii,SLRT,0.4,asymptotic-slrt,2,0.464\n"
      "ii,SLRT,0.4,asymptotic-slrt,4,0.889\n"
      "ii,SLRT,0.5,universal,0,0.000\n"
      "ii,SLRT,0.5,universal,0.5,0.002\n"
      "ii,SLRT,0.5,universal,1,0.019\n"
      "ii,SLRT,0.5,universal,2,0.193\n"
      "ii,SLRT,0.5,universal,4,0.838\n"
      "ii,SLRT,0.5,asymptotic-slrt,0,0.021\n"
      "ii,SLRT,0.5,asymptotic-slrt,0.5,0.033\n"
      "ii,SLRT,0.5,asymptotic-slrt,1,0.133\n"
      "ii,SLRT,0.5,asymptotic-slrt,2,0.454\n"
      "ii,SLRT,0.5,asymptotic-slrt,4,0.924\n"
      "ii,SLRT,0.6,universal,0,0.001\n"
      "ii,SLRT,0.6,universal,0.5,0.002\n"
      "ii,SLRT,0.6,universal,1,0.037\n"
      "ii,SLRT,0.6,universal,2,0.243\n"
      "ii,SLRT,0.6,universal,4,0.885\n"
      "ii,SLRT,0.6,asymptotic-slrt,0,0.022\n"
      "ii,SLRT,0.6,asymptotic-slrt,0.5,0.046\n"
      "ii,SLRT,0.6,asymptotic-slrt,1,0.154\n"
      "ii,SLRT,0.6,asymptotic-slrt,2,0.508\n"
      "ii,SLRT,0.6,asymptotic-slrt,4,0.937\n";
  static const std::string table_iii =
      "case,method,m0,rule,gamma,frequency\n"
      "iii,LRT,,asymptotic-lrt,0,0.025\n"
      "iii,LRT,,asymptotic-lrt,0.5,0.060\n"
      "iii,LRT,,asymptotic-lrt,1,0.222\n"
      "iii,LRT,,asymptotic-lrt,2,0.835\n"
      "iii,LRT,,asymptotic-lrt,4,1.000\n"
      "iii,SLRT,0.4,universal,0,0.000\n"
      "iii,SLRT,0.4,universal,0.5,0.006\n"
      "iii,SLRT,0.4,universal,1,0.024\n"
      "iii,SLRT,0.4,universal,2,0.305\n"
      "iii,SLRT,0.4,universal,4,0.918\n"
      "iii,SLRT,0.4,asymptotic-slrt,0,0.014\n"
      "iii,SLRT,0.4,asymptotic-slrt,0.5,0.048\n"
      "iii,SLRT,0.4,asymptotic-slrt,1,0.179\n"
      "iii,SLRT,0.4,asymptotic-slrt,2,0.633\n"
      "iii,SLRT,0.4,asymptotic-slrt,4,0.960\n"
      "iii,SLRT,0.5,universal,0,0.001\n"
      "iii,SLRT,0.5,universal,0.5,0.010\n"
      "iii,SLRT,0.5,universal,1,0.035\n"
      "iii,SLRT,0.5,universal,2,0.375\n"
      "iii,SLRT,0.5,universal,4,0.945\n"
      "iii,SLRT,0.5,asymptotic-slrt,0,0.016\n"
      "iii,SLRT,0.5,asymptotic-slrt,0.5,0.068\n"
      "iii,SLRT,0.5,asymptotic-slrt,1,0.188\n"
      "iii,SLRT,0.5,asymptotic-slrt,2,0.656\n"
      "iii,SLRT,0.5,asymptotic-slrt,4,0.975\n"
      "iii,SLRT,0.6,universal,0,0.003\n"
      "iii,SLRT,0.6,universal,0.5,0.013\n"
      "iii,SLRT,0.6,universal,1,0.046\n"
      "iii,SLRT,0.6,universal,2,0.403\n"
      "iii,SLRT,0.6,universal,4,0.955\n"
      "iii,SLRT,0.6,asymptotic-slrt,0,0.022\n"
      "iii,SLRT,0.6,asymptotic-slrt,0.5,0.067\n"
      "iii,SLRT,0.6,asymptotic-slrt,1,0.225\n"
      "iii,SLRT,0.6,asymptotic-slrt,2,0.679\n"
      "iii,SLRT,0.6,asymptotic-slrt,4,0.978\n";
  static const std::string table_iv =
      "case,method,m0,rule,gamma,frequency\n"
      "iv,LRT,,asymptotic-lrt,0,0.046\n"
      "iv,LRT,,asymptotic-lrt,0.5,0.054\n"
      "iv,LRT,,asymptotic-lrt,1,0.107\n"
      "iv,LRT,,asymptotic-lrt,2,0.749\n"
      "iv,LRT,,asymptotic-lrt,4,1.000\n"
      "iv,SLRT,0.4,universal,0,0.000\n"
      "iv,SLRT,0.4,universal,0.5,0.001\n"
      "iv,SLRT,0.4,universal,1,0.004\n"
      "iv,SLRT,0.4,universal,2,0.102\n"
      "iv,SLRT,0.4,universal,4,0.986\n"
      "iv,SLRT,0.4,asymptotic-slrt,0,0.006\n"
      "iv,SLRT,0.4,asymptotic-slrt,0.5,0.023\n"
      "iv,SLRT,0.4,asymptotic-slrt,1,0.064\n"
      "iv,SLRT,0.4,asymptotic-slrt,2,0.392\n"
      "iv,SLRT,0.4,asymptotic-slrt,4,0.994\n"
      "iv,SLRT,0.5,universal,0,0.001\n"
      "iv,SLRT,0.5,universal,0.5,0.002\n"
      "iv,SLRT,0.5,universal,1,0.002\n"
      "iv,SLRT,0.5,universal,2,0.172\n"
      "iv,SLRT,0.5,universal,4,0.992\n"
      "iv,SLRT,0.5,asymptotic-slrt,0,0.015\n"
      "iv,SLRT,0.5,asymptotic-slrt,0.5,0.014\n"
      "iv,SLRT,0.5,asymptotic-slrt,1,0.032\n"
      "iv,SLRT,0.5,asymptotic-slrt,2,0.411\n"
      "iv,SLRT,0.5,asymptotic-slrt,4,0.993\n"
      "iv,SLRT,0.6,universal,0,0.004\n"
      "iv,SLRT,0.6,universal,0.5,0.001\n"
      "iv,SLRT,0.6,universal,1,0.009\n"
      "iv,SLRT,0.6,universal,2,0.209\n"
      "iv,SLRT,0.6,universal,4,0.995\n"
      "iv,SLRT,0.6,asymptotic-slrt,0,0.016\n"
      "iv,SLRT,0.6,asymptotic-slrt,0.5,0.019\n"
      "iv,SLRT,0.6,asymptotic-slrt,1,0.052\n"
      "iv,SLRT,0.6,asymptotic-slrt,2,0.442\n"
      "iv,SLRT,0.6,asymptotic-slrt,4,0.996\n";
  static const std::string table_v =
      "case,method,m0,rule,gamma,frequency\n"
      "v,LRT,,asymptotic-lrt,0,0.037\n"
      "v,LRT,,asymptotic-lrt,0.5,0.055\n"
      "v,LRT,,asymptotic-lrt,1,0.115\n"
      "v,LRT,,asymptotic-lrt,2,0.726\n"
      "v,LRT,,asymptotic-lrt,4,0.999\n"
      "v,SLRT,0.4,universal,0,0.000\n"
      "v,SLRT,0.4,universal,0.5,0.001\n"
      "v,SLRT,0.4,universal,1,0.005\n"
      "v,SLRT,0.4,universal,2,0.154\n"
      "v,SLRT,0.4,universal,4,0.983\n"
      "v,SLRT,0.4,asymptotic-slrt,0,0.019\n"
      "v,SLRT,0.4,asymptotic-slrt,0.5,0.017\n"
      "v,SLRT,0.4,asymptotic-slrt,1,0.039\n"
      "v,SLRT,0.4,asymptotic-slrt,2,0.417\n"
      "v,SLRT,0.4,asymptotic-slrt,4,0.991\n"
      "v,SLRT,0.5,universal,0,0.001\n"
      "v,SLRT,0.5,universal,0.5,0.001\n"
      "v,SLRT,0.5,universal,1,0.005\n"
      "v,SLRT,0.5,universal,2,0.175\n"
      "v,SLRT,0.5,universal,4,0.997\n"
      "v,SLRT,0.5,asymptotic-slrt,0,0.011\n"
      "v,SLRT,0.5,asymptotic-slrt,0.5,0.022\n"
      "v,SLRT,0.5,asymptotic-slrt,1,0.040\n"
      "v,SLRT,0.5,asymptotic-slrt,2,0.441\n"
      "v,SLRT,0.5,asymptotic-slrt,4,0.998\n"
      "v,SLRT,0.6,universal,0,0.001\n"
      "v,SLRT,0.6,universal,0.5,0.003\n"
      "v,SLRT,0.6,universal,1,0.007\n"
      "v,SLRT,0.6,universal,2,0.193\n"
      "v,SLRT,0.6,universal,4,0.996\n"
      "v,SLRT,0.6,asymptotic-slrt,0,0.013\n"
      "v,SLRT,0.6,asymptotic-slrt,0.5,0.020\n"
      "v,SLRT,0.6,asymptotic-slrt,1,0.056\n"
      "v,SLRT,0.6,asymptotic-slrt,2,0.441\n"
      "v,SLRT,0.6,asymptotic-slrt,4,0.996\n";
  switch (case_id) {
    case ScenarioCase::i: return table_i;
    case ScenarioCase::ii: return table_ii;
    case ScenarioCase::iii: return table_iii;
    case ScenarioCase::iv: return table_iv;
    case ScenarioCase::v: return table_v;
    case ScenarioCase::contig: break;
  }
  throw key_mismatch_error("no bundled reference table for this case");
}

}  // namespace unimix
