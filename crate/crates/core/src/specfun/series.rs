// Taylor coefficients at 0, in powers of z, generated once with sympy from the
// Cot/Sin forms in `family.rs` (exact rationals rounded to the nearest f64).
// The nearest singularity is the pole at pi^2, so 32 terms are far more than
// enough inside the switch radius.

// (1 - Cot)/z
pub(crate) const C: [f64; 32] = [
    0.3333333333333333,
    0.022222222222222223,
    0.0021164021164021165,
    0.00021164021164021165,
    2.1377799155576935e-05,
    2.1644042808063972e-06,
    2.1925947851873778e-07,
    2.2214608789979678e-08,
    2.2507846516808994e-09,
    2.2805151204592183e-10,
    2.3106432599002624e-11,
    2.3411706819824882e-12,
    2.3721017400233653e-13,
    2.4034415333307705e-14,
    2.4351954029183367e-15,
    2.4673688045172075e-16,
    2.499967277122081e-17,
    2.532996435740635e-18,
    2.566461970282629e-19,
    2.6003696460137274e-20,
    2.63472530441538e-21,
    2.669534864157395e-22,
    2.704804322109031e-23,
    2.7405397543699514e-24,
    2.7767473173164437e-25,
    2.813433248661879e-26,
    2.8506038685312917e-27,
    2.8882655805501746e-28,
    2.926424872947676e-29,
    2.9650883196743643e-30,
    3.00426258153477e-31,
    3.043954407334882e-32,
];

// (q - 1)/z, q = 1/Sin^2
pub(crate) const D: [f64; 32] = [
    0.3333333333333333,
    0.06666666666666667,
    0.010582010582010581,
    0.0014814814814814814,
    0.0001924001924001924,
    2.380844708887037e-05,
    2.8503732207435913e-06,
    3.332191318496952e-07,
    3.8263339078575285e-08,
    4.332978728872515e-09,
    4.852350845790551e-10,
    5.3846925685597234e-11,
    5.930254350058414e-12,
    6.489292139993081e-13,
    7.062066668463177e-14,
    7.648843294003344e-15,
    8.249892014502867e-16,
    8.865487525092221e-17,
    9.495909290045727e-18,
    1.0141441619453536e-18,
    1.0802373748103058e-19,
    1.1478999915876798e-20,
    1.217161944949064e-21,
    1.288053684553877e-22,
    1.3606061854850572e-23,
    1.4348509568175585e-24,
    1.5108200503215846e-25,
    1.588546069302596e-26,
    1.668062177580175e-27,
    1.749402108607875e-28,
    1.8326001747362096e-29,
    1.9176912766209755e-30,
];

// (q + Cot - 2)/z^2
pub(crate) const W: [f64; 32] = [
    0.044444444444444446,
    0.008465608465608466,
    0.0012698412698412698,
    0.00017102239324461548,
    2.1644042808063973e-05,
    2.631113742224853e-06,
    3.110045230597155e-07,
    3.601255442689439e-08,
    4.1049272168265925e-09,
    4.621286519800525e-10,
    5.1505755003614744e-11,
    5.693044176056077e-12,
    6.248947986660003e-13,
    6.818547128171344e-14,
    7.402106413551622e-15,
    7.999895286790659e-16,
    8.612187881518158e-17,
    9.239263093017464e-18,
    9.881404654852163e-19,
    1.053890121766152e-19,
    1.121204642946106e-20,
    1.1901139017279737e-21,
    1.2606482870101777e-22,
    1.332838712311893e-23,
    1.4067166243309396e-24,
    1.4823140116362716e-25,
    1.5596634134970944e-26,
    1.6387979288506985e-27,
    1.7197512254111312e-28,
    1.802557548920862e-29,
    1.8872517325476267e-30,
    1.973869206428678e-31,
];

// (3 - 3 Cot - z)/z^2
pub(crate) const P: [f64; 32] = [
    0.06666666666666667,
    0.006349206349206349,
    0.0006349206349206349,
    6.41333974667308e-05,
    6.493212842419191e-06,
    6.577784355562133e-07,
    6.664382636993903e-08,
    6.7523539550426975e-09,
    6.841545361377655e-10,
    6.931929779700787e-11,
    7.0235120459474655e-12,
    7.116305220070096e-13,
    7.210324599992312e-14,
    7.30558620875501e-15,
    7.402106413551622e-16,
    7.499901831366242e-17,
    7.598989307221904e-18,
    7.699385910847886e-19,
    7.801108938041182e-20,
    7.90417591324614e-21,
    8.008604592472185e-22,
    8.114412966327093e-23,
    8.221619263109854e-24,
    8.330241951949331e-25,
    8.440299745985638e-26,
    8.551811605593876e-27,
    8.664796741650524e-28,
    8.779274618843027e-29,
    8.895264959023093e-30,
    9.01278774460431e-31,
    9.131863222004645e-32,
    9.252511905134429e-33,
];

// (1 - Cot q)/z^2
pub(crate) const G: [f64; 32] = [
    0.06666666666666667,
    0.021164021164021163,
    0.0044444444444444444,
    0.0007696007696007696,
    0.00011904223544435184,
    1.7102239324461548e-05,
    2.3325339229478664e-06,
    3.061067126286023e-07,
    3.8996808559852634e-08,
    4.852350845790551e-09,
    5.923161825415695e-10,
    7.116305220070096e-11,
    8.436079781991004e-12,
    9.886893335848448e-13,
    1.1473264941005015e-13,
    1.3199827223204588e-14,
    1.5071328792656778e-15,
    1.7092636722082307e-16,
    1.926873907696172e-17,
    2.1604747496206116e-18,
    2.410589982334128e-19,
    2.6777562788879407e-20,
    2.9625234744739173e-21,
    3.2654548451641376e-22,
    3.5871273920438963e-23,
    3.92813213083612e-24,
    4.289074387117009e-25,
    4.6705740972244905e-26,
    5.073266114962837e-27,
    5.497800524208629e-28,
    5.944842957525024e-29,
    6.415074920893204e-30,
];

// (q (3 - z - 2 Cot) - 1)/z^3
pub(crate) const L: [f64; 32] = [
    0.007407407407407408,
    0.0027513227513227515,
    0.0006349206349206349,
    0.0001171096197551224,
    1.89471512222835e-05,
    2.814352020701227e-06,
    3.9378431064323527e-07,
    5.272921422774752e-08,
    6.827428216445752e-09,
    8.609380575608757e-10,
    1.0626994176597993e-10,
    1.2888692855921521e-11,
    1.5403114532242769e-12,
    1.8179116201747856e-13,
    2.122577875675669e-14,
    2.4552411828338355e-15,
    2.816855870608611e-16,
    3.208400134971378e-17,
    3.6308765497389616e-18,
    4.0853125873342534e-19,
    4.5727611496729206e-20,
    5.094301109364934e-21,
    5.651037861419915e-22,
    6.244103885648003e-23,
    6.874659319951157e-24,
    7.543892544703213e-25,
    8.253020778420438e-26,
    9.003290684927862e-27,
    9.795978992230246e-28,
    1.063239312330013e-28,
    1.1513871838999171e-29,
    1.2441785893352652e-30,
];

// (8 - 3 Cot - q (3 + 2 Cot))/(3 z^3)
pub(crate) const X: [f64; 32] = [
    0.005643738977072311,
    0.0016931216931216932,
    0.00034204478648923095,
    5.771744748817059e-05,
    8.77037914074951e-06,
    1.244018092238862e-06,
    1.6805858732550716e-07,
    2.1892945156408497e-08,
    2.772771911880315e-09,
    3.433717000240983e-10,
    4.1748990624411234e-11,
    4.999158389328003e-12,
    5.90940751108183e-13,
    6.908632652648181e-14,
    7.999895286790659e-15,
    9.186333740286035e-16,
    1.0471164838753125e-16,
    1.1857685585822597e-17,
    1.3349274875704593e-18,
    1.4949395239281413e-19,
    1.6661594624191632e-20,
    1.8489508209482604e-21,
    2.0436860255449024e-22,
    2.2507465989295034e-23,
    2.4705233527271195e-24,
    2.7034165833949636e-25,
    2.949836271931257e-26,
    3.210202287434112e-27,
    3.484944594580333e-28,
    3.7745034650952535e-29,
    4.079329693285935e-30,
    4.399884815711344e-31,
];

// (1 - Sin^2)/z
pub(crate) const G_AUX: [f64; 32] = [
    0.3333333333333333,
    -0.044444444444444446,
    0.0031746031746031746,
    -0.00014109347442680775,
    4.275559831115387e-06,
    -9.39683479366019e-08,
    1.5661391322766984e-09,
    -2.0472406957865337e-11,
    2.1549902060910883e-13,
    -1.8657923862260506e-15,
    1.3520234682797467e-17,
    -8.320144420183057e-20,
    4.40219281491167e-22,
    -2.0239966965111126e-24,
    8.161277002060938e-27,
    -2.9095461682926696e-29,
    9.236654502516412e-32,
    -2.627782219777073e-34,
    6.737903127633521e-37,
    -1.565134292133222e-39,
    3.3089519918249934e-42,
    -6.394110129130422e-45,
    1.1337074697039755e-47,
    -1.8509509709452663e-50,
    2.7917812533111106e-53,
    -3.9018605916297842e-56,
    5.067351417701018e-59,
    -6.1310966941331135e-62,
    6.927792874726682e-65,
    -7.327120967452863e-68,
    7.26896921374292e-71,
    -6.777593672487571e-74,
];

// (Sin - Cos)/z
pub(crate) const H_AUX: [f64; 32] = [
    0.3333333333333333,
    -0.03333333333333333,
    0.0011904761904761906,
    -2.2045855379188714e-05,
    2.505210838544172e-07,
    -1.9270852604185937e-09,
    1.0706029224547743e-11,
    -4.498331606952833e-14,
    1.4797143443923793e-16,
    -3.9145882126782523e-19,
    8.509974375387505e-22,
    -1.5472680682522736e-24,
    2.387759364586842e-27,
    -3.166789608205361e-30,
    3.6483751246605535e-33,
    -3.685227398647024e-36,
    3.290381605934843e-39,
    -2.6155656644951056e-42,
    1.8629385074751463e-45,
    -1.1957243308569618e-48,
    6.95188564451722e-52,
    -3.6782463727604336e-55,
    1.778649116421873e-58,
    -7.891078599919579e-62,
    3.2234798202285863e-65,
    -1.216407479331542e-68,
    4.253173004655741e-72,
    -1.381797597354042e-75,
    4.182196117899643e-79,
    -1.182079174081301e-82,
    3.127193582225664e-86,
    -7.7597855638353945e-90,
];

// AS(z)^2 in powers of w = z - 1; the nearest singularity is z = -1.
pub(crate) const AS_SQ: [f64; 40] = [
    0.3333333333333333,
    -0.35555555555555557,
    0.27936507936507937,
    -0.19301587301587303,
    0.12413660413660414,
    -0.07626320769177912,
    0.04538445681302824,
    -0.026383658876656075,
    0.015065256899253655,
    -0.008481338814658745,
    0.004720283983986136,
    -0.0026022795964946066,
    0.001423250461432632,
    -0.0007731499985001841,
    0.00041755033302714876,
    -0.0002243600083942443,
    0.00012001700223702681,
    -6.394754491835275e-05,
    3.395280290465916e-05,
    -1.797033411784128e-05,
    9.484192685822058e-06,
    -4.992572149952517e-06,
    2.62197559517211e-06,
    -1.37404490968795e-06,
    7.186511013945308e-07,
    -3.751871564168027e-07,
    1.9554676347197855e-07,
    -1.0176059009952975e-07,
    5.287894320351441e-08,
    -2.7441196299880706e-08,
    1.4222604842762042e-08,
    -7.362852065232507e-09,
    3.8074620125371065e-09,
    -1.9668740060187707e-09,
    1.0150684156358616e-09,
    -5.233786616046127e-10,
    2.696253665697331e-10,
    -1.387873411999419e-10,
    7.13841955979205e-11,
    -3.668890009458032e-11,
];
