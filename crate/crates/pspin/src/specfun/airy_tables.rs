//! Chebyshev coefficients for the scaled Airy corrections, fitted against
//! arbitrary-precision references (see `tools/gen_airy_tables.py`).
//!
//! Variable: `s = 1/zeta`, `zeta = (2/3) |x|^{3/2}`, mapped to `t = 2 s / SMAX - 1`
//! over `s` in `[0, SMAX]`, i.e. `|x| >= SWITCH_X`.

pub(super) const SMAX: f64 = 0.816496580927726;
pub(super) const SWITCH_X: f64 = 1.5;

pub(super) const RAI: [f64; 33] = [
    0.9775538508558447,
    -0.020862474405707418,
    0.0014022222549226898,
    -0.0001544553544299286,
    2.2230278576775592e-05,
    -3.8140397075707215e-06,
    7.432694286715768e-07,
    -1.5978444017793685e-07,
    3.716706499386067e-08,
    -9.22821240422212e-09,
    2.421425381485514e-09,
    -6.663623149839649e-10,
    1.9118037236457328e-10,
    -5.691041745141417e-11,
    1.7508906613955337e-11,
    -5.549265809214176e-12,
    1.806924285185253e-12,
    -6.030459662917222e-13,
    2.058893703154717e-13,
    -7.176664337890011e-14,
    2.5523020608616955e-14,
    -9.230850695857147e-15,
    3.3997011116115e-15,
    -1.2478454903241926e-15,
    4.675349969858849e-16,
    -1.657608402753227e-16,
    4.4854673340308775e-17,
    -7.136012208893321e-18,
    1.9190247231659543e-18,
    1.0946372614763344e-17,
    -1.0581239375699522e-17,
    2.401078470102786e-17,
    -1.2981756018705201e-17,
];

pub(super) const RAIP: [f64; 33] = [
    1.0325540393026091,
    0.030616106988866618,
    -0.0017282814545023894,
    0.00017936566899157583,
    -2.5034441838171188e-05,
    4.214269334758285e-06,
    -8.106218858743072e-07,
    1.7260370212299528e-07,
    -3.985454928807631e-08,
    9.837688865559513e-09,
    -2.569015186439431e-09,
    7.041566739558097e-10,
    -2.0133858318612666e-10,
    5.975916441520623e-11,
    -1.8338497720017273e-11,
    5.7991228207672704e-12,
    -1.8845222168975193e-12,
    6.278097010763225e-13,
    -2.140099278863425e-13,
    7.447094817911934e-14,
    -2.6466462166450073e-14,
    9.557450546696896e-15,
    -3.522806071339277e-15,
    1.2743920990985836e-15,
    -4.787772156417594e-16,
    1.613031801162857e-16,
    -7.7144110161666e-17,
    -7.10713914235695e-18,
    -8.22109546590526e-18,
    -1.9727781515436562e-17,
    -7.101838519663753e-18,
    -4.5378195246243155e-17,
    3.18019517826248e-19,
];

pub(super) const NEG_A: [f64; 33] = [
    0.9934797378692009,
    -0.008176260182832091,
    -0.0013610693660094663,
    0.00027237987637346105,
    -2.7131904636321655e-05,
    -1.9759952037431883e-06,
    1.900350422501542e-06,
    -5.959040190369085e-07,
    1.1770019188671927e-07,
    -6.5983140741712976e-09,
    -7.117638683436585e-09,
    4.3111053676033855e-09,
    -1.59720238749493e-09,
    4.223136821854305e-10,
    -5.788191876480272e-11,
    -1.8343388883014873e-11,
    1.943097194242499e-11,
    -1.0118468234607252e-11,
    3.9348673445695535e-12,
    -1.1584596577665788e-12,
    1.902364263459812e-13,
    5.3685992077335965e-14,
    -7.176494444118226e-14,
    4.41626673622526e-14,
    -2.0729920464030012e-14,
    7.789529616916196e-15,
    -2.2622594057864e-15,
    2.1224879691158423e-16,
    1.9934475247575444e-16,
    -2.8265714587521506e-16,
    1.1164087679216156e-16,
    -1.0212795322443288e-16,
    -5.3916136087863866e-18,
];

pub(super) const NEG_B: [f64; 33] = [
    0.024911333559969523,
    0.023479387257833086,
    -0.0015119692058676334,
    -2.9544151411300083e-05,
    3.959935978329678e-05,
    -9.763129533088192e-06,
    1.3521519682139501e-06,
    5.732799912642399e-08,
    -1.1608964499805988e-07,
    4.8027351197749046e-08,
    -1.3150469496591784e-08,
    2.1482017424815637e-09,
    2.1247477530767638e-10,
    -3.635858205355081e-10,
    1.8991722601186783e-10,
    -7.029738926980085e-11,
    1.908519408804147e-11,
    -2.5650617557084653e-12,
    -1.0878648134726028e-12,
    1.1421428197130677e-12,
    -6.315174079869434e-13,
    2.6638739104434215e-13,
    -8.815786572509095e-14,
    1.924842023132037e-14,
    1.2413274080023664e-15,
    -4.516328680568361e-15,
    3.3240665468902214e-15,
    -1.7634725946128527e-15,
    7.720555678970046e-16,
    -2.7277689065732913e-16,
    7.985285058184542e-17,
    -1.3905131673862723e-17,
    7.162500237112438e-19,
];

pub(super) const NEG_C: [f64; 33] = [
    1.0079061817698332,
    0.009962026959346344,
    0.0017227268853227215,
    -0.00030981851993570355,
    2.8629239777709986e-05,
    2.4880310298150405e-06,
    -2.092143603846038e-06,
    6.359098901193819e-07,
    -1.2204778985552115e-07,
    5.793588326855057e-09,
    7.799799424470348e-09,
    -4.570657709658328e-09,
    1.6664390205712496e-09,
    -4.33412203620629e-10,
    5.6636985224417754e-11,
    2.0347692977440693e-11,
    -2.0491298500856237e-11,
    1.0522485900583296e-11,
    -4.0515558566135665e-12,
    1.1782702854488352e-12,
    -1.866173181990043e-13,
    -5.939730324497114e-14,
    7.508174814790365e-14,
    -4.5786974163787676e-14,
    2.11965375184512e-14,
    -8.019037114951992e-15,
    2.1864464551571065e-15,
    -2.8850537326163576e-16,
    -3.065136334191829e-16,
    1.8905172216199356e-16,
    -2.1632596161430977e-16,
    1.867254904409931e-17,
    -6.964031831020344e-17,
];

pub(super) const NEG_D: [f64; 33] = [
    -0.03575581044358123,
    -0.034104460613752434,
    0.0017537118098826447,
    4.563264955591016e-05,
    -4.500805762605633e-05,
    1.0591357654081733e-05,
    -1.4004777116260786e-06,
    -7.821746235269233e-08,
    1.2649031242904753e-07,
    -5.0947303499409666e-08,
    1.368164704915481e-08,
    -2.1592783548838107e-09,
    -2.5564565233367524e-10,
    3.8780115024251214e-10,
    -1.9882987027973952e-10,
    7.270750229848503e-11,
    -1.9453595737297105e-11,
    2.484462840265486e-12,
    1.1896599065209864e-12,
    -1.1980723855820284e-12,
    6.544341874110531e-13,
    -2.737254351133199e-13,
    8.971832740521797e-14,
    -1.9166527289108077e-14,
    -1.5729441818374778e-15,
    4.750791221021839e-15,
    -3.4406585922720007e-15,
    1.826334201961094e-15,
    -7.958616778831232e-16,
    2.814474294851789e-16,
    -8.65299177020201e-17,
    2.1110308587507872e-17,
    -1.5129269042172664e-17,
];

