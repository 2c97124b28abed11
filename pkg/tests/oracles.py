"""Reference values computed once with mpmath at 30 digits and frozen here."""

LI2_I = complex(-0.20561675835602830456, 0.91596559417721901505)
LI3_HALF = 0.53721319360804020094
LI2_MINUS_ONE = -0.82246703342411321824
LI2_09_E2I = complex(-0.44452028964890284166, 0.66878743447993536606)  # Li_2(0.9 e^{2i})
LI4_07 = 0.73621724094913835921
LI3_E1I = complex(0.44857300728001739775, 0.94286923678411146019)      # Li_3(e^{i})
ZETA5 = 1.0369277551433699263
PSI3_QUARTER = 1538.782144009188396
PSI3_THREE_QUARTERS = 19.76331253485059976

J = {1: 1.2337005501361698274, 2: 1.5479824021577423047,
     3: 1.9754169770989024095, 4: 2.5629056086117946185}

HAT_AT_HALF = {"arcsine01": 1.2091995761561452271, "sec_branch": 1.5206919926018926884,
               "cauchy": 0.97937818921193917162, "arcsine_full": 3.6275987284684356635}

WALLIS_GF_03 = 3.8653394693855337841   # (int_0^{pi/2} dt/(1 - 0.3 cos t))^2
T_VALUE = 0.096748900134858894041
GK_TEST = 0.075661075553244048692      # int_0^2 e^{-x} cos 3x dx
DE_TEST = -1.2274112777602187623       # int_0^1 log x / sqrt(1-x) dx
SIMPLEX2 = 0.30842513753404245684      # int_{0<x<y<1} dx dy / ((1+x^2)(1+y^2))
