"""Gamma approximation coefficients for supLM p-values.

Generated by scripts/calibrate_suplm.py (reps=100000, grid=1000, seed=20240611).
sf(x) = gamma.sf(x, SHAPE, scale=SCALE); MAX_REL_ERR is the largest relative
error of the fitted tail probability over levels 0.9 .. 0.001.
"""

P_MAX = 24
TRIMS = (0.01, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45)

# (p, trim): (shape, scale, max_rel_err)
TABLE = {
    (1, 0.01): (2.9394597022336755, 1.6784354311650007, 0.1299),
    (1, 0.025): (2.697393228364225, 1.7222118187685118, 0.1257),
    (1, 0.05): (2.449938824942811, 1.7694345386086, 0.1236),
    (1, 0.075): (2.2869097035093464, 1.8004742279302484, 0.1295),
    (1, 0.1): (2.1719604553649403, 1.8186305654516834, 0.1146),
    (1, 0.125): (2.0754161638282786, 1.8302221986940521, 0.1222),
    (1, 0.15): (1.9894230859058055, 1.8408085817164057, 0.1182),
    (1, 0.2): (1.830668994565322, 1.8579303586055032, 0.0983),
    (1, 0.25): (1.6607239162734753, 1.885377509521614, 0.0967),
    (1, 0.3): (1.4695123334541034, 1.9393827101602223, 0.1004),
    (1, 0.35): (1.303828249267335, 1.9622945149593216, 0.0992),
    (1, 0.4): (1.1115258371839094, 2.0033681626790667, 0.0980),
    (1, 0.45): (0.9055365019533826, 2.011287975392261, 0.0857),
    (2, 0.01): (4.50002277043165, 1.6072949826962828, 0.1412),
    (2, 0.025): (4.137138963540218, 1.661997050686024, 0.1367),
    (2, 0.05): (3.7564848544268945, 1.7251370592032795, 0.1368),
    (2, 0.075): (3.5508244218062726, 1.7512290279332439, 0.1278),
    (2, 0.1): (3.430637333793172, 1.7559744478656079, 0.1165),
    (2, 0.125): (3.28600631017027, 1.7727028187938456, 0.1116),
    (2, 0.15): (3.192689715193841, 1.7744831493498177, 0.1005),
    (2, 0.2): (3.0075194077319796, 1.7805413961871086, 0.1031),
    (2, 0.25): (2.7484104159423266, 1.815787554055197, 0.1173),
    (2, 0.3): (2.562764718251643, 1.821452984710931, 0.1057),
    (2, 0.35): (2.3423833186180314, 1.8371719423429496, 0.0966),
    (2, 0.4): (2.066780010922571, 1.8684368819531494, 0.0681),
    (2, 0.45): (1.7134391584357702, 1.9091111688663969, 0.0499),
    (3, 0.01): (6.096142437648993, 1.5176112547430547, 0.1307),
    (3, 0.025): (5.6647881686547885, 1.564714790395723, 0.1189),
    (3, 0.05): (5.262692705652345, 1.6058364475782125, 0.1107),
    (3, 0.075): (4.940223687081827, 1.6463832680109278, 0.1077),
    (3, 0.1): (4.737265318746288, 1.6655882230590682, 0.1002),
    (3, 0.125): (4.572970133731186, 1.6780628420313197, 0.0927),
    (3, 0.15): (4.401918472326287, 1.6953349744822033, 0.0876),
    (3, 0.2): (4.031228764756825, 1.7478365606648458, 0.0800),
    (3, 0.25): (3.6835955047239572, 1.7974420842373735, 0.0765),
    (3, 0.3): (3.41951370991628, 1.8201981528995974, 0.0681),
    (3, 0.35): (3.0977879249317066, 1.8611944639841689, 0.0894),
    (3, 0.4): (2.7157504733925246, 1.919907740092635, 0.0770),
    (3, 0.45): (2.369121397888363, 1.9230099388686295, 0.0616),
    (4, 0.01): (7.311260560838691, 1.5046048476511733, 0.1392),
    (4, 0.025): (6.88174226274567, 1.5410170575026636, 0.1249),
    (4, 0.05): (6.4449203683815295, 1.5759549052106325, 0.1139),
    (4, 0.075): (6.050856169550499, 1.6199469540900906, 0.1118),
    (4, 0.1): (5.8106244942872, 1.6409772144337187, 0.1030),
    (4, 0.125): (5.649229755331369, 1.6472415692096105, 0.0931),
    (4, 0.15): (5.486126342678073, 1.655200202747222, 0.0856),
    (4, 0.2): (5.037430926605113, 1.7077140913573083, 0.0809),
    (4, 0.25): (4.645594273667785, 1.7532255507565084, 0.0747),
    (4, 0.3): (4.378623652821593, 1.7621697701300962, 0.0878),
    (4, 0.35): (3.9453470042344456, 1.8196278953156508, 0.0925),
    (4, 0.4): (3.6067673420181943, 1.8364096392453833, 0.1068),
    (4, 0.45): (3.1796162559509753, 1.847809638167863, 0.0668),
    (5, 0.01): (8.400341867822727, 1.5029634778501533, 0.1486),
    (5, 0.025): (7.969267282149741, 1.532826586493522, 0.1318),
    (5, 0.05): (7.3824022144516706, 1.5853324691231434, 0.1260),
    (5, 0.075): (7.0950898742655415, 1.6025609718915885, 0.1146),
    (5, 0.1): (6.955490816607324, 1.5998851249080068, 0.0990),
    (5, 0.125): (6.859367478964839, 1.5898283930883337, 0.0916),
    (5, 0.15): (6.555673615331448, 1.62061608701544, 0.0814),
    (5, 0.2): (6.156967037759204, 1.65018383423158, 0.0688),
    (5, 0.25): (5.665150255426742, 1.703415728296013, 0.0624),
    (5, 0.3): (5.302763567603368, 1.727446757325186, 0.0676),
    (5, 0.35): (4.787830189524572, 1.7906301139431926, 0.0762),
    (5, 0.4): (4.356874748171222, 1.8216060947444999, 0.0528),
    (5, 0.45): (3.9263353240186887, 1.8174625639383986, 0.0894),
    (6, 0.01): (9.668661096674608, 1.4745563581905081, 0.1437),
    (6, 0.025): (9.101444890207471, 1.5149406768400382, 0.1323),
    (6, 0.05): (8.450099486250036, 1.5678006296144789, 0.1489),
    (6, 0.075): (8.110834318936393, 1.5896032219834646, 0.1149),
    (6, 0.1): (7.906268055303494, 1.5956322101092804, 0.1064),
    (6, 0.125): (7.678260943351729, 1.606427486719389, 0.1247),
    (6, 0.15): (7.37888966880729, 1.6326208985528634, 0.1254),
    (6, 0.2): (6.940110996528429, 1.6639513287709806, 0.0788),
    (6, 0.25): (6.400927152261577, 1.7188896822475916, 0.1474),
    (6, 0.3): (6.13962074712967, 1.7150627877255271, 0.1054),
    (6, 0.35): (5.686894125506401, 1.749592569472215, 0.0462),
    (6, 0.4): (5.205606455618637, 1.780475254151299, 0.0478),
    (6, 0.45): (4.622667329675846, 1.8066177592709582, 0.0656),
    (7, 0.01): (10.993112071364964, 1.4407189800986162, 0.1504),
    (7, 0.025): (10.240579892710967, 1.4951036509800386, 0.1805),
    (7, 0.05): (9.530935852973348, 1.5472672509991128, 0.1398),
    (7, 0.075): (9.117364725809644, 1.5754846580768, 0.1633),
    (7, 0.1): (8.959583317460261, 1.5733673577119072, 0.1002),
    (7, 0.125): (8.669866600983644, 1.5906099324604328, 0.1135),
    (7, 0.15): (8.443740823266799, 1.6018778661936475, 0.0854),
    (7, 0.2): (7.955157019920521, 1.634067379087544, 0.0766),
    (7, 0.25): (7.418395662395456, 1.6779770219956465, 0.0923),
    (7, 0.3): (6.937920388857095, 1.7108675732827632, 0.0829),
    (7, 0.35): (6.4053442481339955, 1.7539812851451484, 0.0676),
    (7, 0.4): (5.809608565634828, 1.804833643610608, 0.0787),
    (7, 0.45): (5.246034428388652, 1.8171217709823346, 0.0782),
    (8, 0.01): (12.07801201776982, 1.4359896811597097, 0.1425),
    (8, 0.025): (11.177345745976774, 1.4996590876252938, 0.1402),
    (8, 0.05): (10.378491175133012, 1.5571938476215867, 0.1355),
    (8, 0.075): (10.033052477537533, 1.5744163373761075, 0.1204),
    (8, 0.1): (9.731183818551882, 1.5897853492794125, 0.1279),
    (8, 0.125): (9.439789815592784, 1.6048986264526524, 0.1611),
    (8, 0.15): (9.225367347592266, 1.6129196028093673, 0.1188),
    (8, 0.2): (8.60015951963926, 1.6613828996546318, 0.0982),
    (8, 0.25): (8.149848593867189, 1.6859578763609917, 0.1242),
    (8, 0.3): (7.662981529410921, 1.7153365319735667, 0.0964),
    (8, 0.35): (7.09525298152147, 1.7586436838030257, 0.0447),
    (8, 0.4): (6.295246706729543, 1.8466138082173547, 0.0784),
    (8, 0.45): (5.5574495065411735, 1.8979282002273659, 0.0734),
    (9, 0.01): (13.232426195694474, 1.4225450380599607, 0.1445),
    (9, 0.025): (12.246895587264293, 1.4881108208328484, 0.1396),
    (9, 0.05): (11.394497266703024, 1.5449754102896447, 0.1351),
    (9, 0.075): (10.932859263956795, 1.573062174296517, 0.1226),
    (9, 0.1): (10.52343969512076, 1.5996727852876254, 0.1302),
    (9, 0.125): (10.073128515919269, 1.6336146218100258, 0.1417),
    (9, 0.15): (9.871625278523155, 1.638893002564587, 0.1591),
    (9, 0.2): (9.348725417215483, 1.6695323117066878, 0.0967),
    (9, 0.25): (8.856126945734362, 1.697328681390096, 0.1015),
    (9, 0.3): (8.329960786172386, 1.7295766257042864, 0.0864),
    (9, 0.35): (7.732038239497106, 1.7732507654125291, 0.0645),
    (9, 0.4): (6.908516070329154, 1.8548584527572285, 0.0555),
    (9, 0.45): (5.995845733741873, 1.9397723298457528, 0.0751),
    (10, 0.01): (14.768665372709373, 1.3786874127486115, 0.1331),
    (10, 0.025): (13.7865575646891, 1.4336283476570664, 0.1258),
    (10, 0.05): (12.83031198343951, 1.4905707004306274, 0.1201),
    (10, 0.075): (12.224804102221123, 1.5277488394702547, 0.1339),
    (10, 0.1): (11.716534744703049, 1.561073427804943, 0.1369),
    (10, 0.125): (11.276446587852703, 1.5890517122010621, 0.1014),
    (10, 0.15): (10.847077038273769, 1.6193867284477388, 0.0986),
    (10, 0.2): (10.217074815150314, 1.6581811967696947, 0.0887),
    (10, 0.25): (9.650147246751835, 1.6907698719258946, 0.1192),
    (10, 0.3): (9.057278871848368, 1.7285029413437576, 0.1100),
    (10, 0.35): (8.355392881404807, 1.7842749497383756, 0.0944),
    (10, 0.4): (7.540105440692555, 1.85705938274269, 0.0719),
    (10, 0.45): (6.513599912207003, 1.9549089698756839, 0.1098),
    (11, 0.01): (15.745885473175557, 1.381966265973191, 0.1367),
    (11, 0.025): (14.79772728002269, 1.430011158940271, 0.1276),
    (11, 0.05): (14.013724042342789, 1.4667175111601762, 0.1160),
    (11, 0.075): (13.32951572966206, 1.5064460815267042, 0.1135),
    (11, 0.1): (12.759304629212233, 1.541671178793982, 0.1144),
    (11, 0.125): (12.333337992986579, 1.5656892743494182, 0.0962),
    (11, 0.15): (11.947876369275592, 1.5878512484441138, 0.0912),
    (11, 0.2): (11.234704602133146, 1.6307881014103933, 0.0793),
    (11, 0.25): (10.523271672507223, 1.676632951163068, 0.0822),
    (11, 0.3): (9.762061948636758, 1.7329691701536754, 0.0826),
    (11, 0.35): (9.110396091645203, 1.77477746026164, 0.0733),
    (11, 0.4): (8.237971192379229, 1.8470656658251015, 0.0683),
    (11, 0.45): (7.187849968935992, 1.9357105875559106, 0.0830),
    (12, 0.01): (16.997600321736236, 1.3652487260805686, 0.1336),
    (12, 0.025): (15.778411365558116, 1.4289476586203511, 0.1301),
    (12, 0.05): (14.802441714437984, 1.4786187869861944, 0.1202),
    (12, 0.075): (13.99388190403358, 1.5274070488807627, 0.1160),
    (12, 0.1): (13.352136614137196, 1.5677670109557937, 0.1146),
    (12, 0.125): (12.873489591342617, 1.5957520229544748, 0.1398),
    (12, 0.15): (12.539222347932421, 1.6119251854307013, 0.1426),
    (12, 0.2): (11.96856265639501, 1.6376085501549518, 0.1481),
    (12, 0.25): (11.235818800369726, 1.6825375555218662, 0.1018),
    (12, 0.3): (10.533865780212645, 1.7269793920641567, 0.0646),
    (12, 0.35): (9.740916245644542, 1.7848362711741654, 0.0767),
    (12, 0.4): (8.830741528256, 1.8572192218974293, 0.0586),
    (12, 0.45): (7.8221433625240415, 1.92856554445843, 0.0465),
    (13, 0.01): (18.526148558126767, 1.3322961007303815, 0.1344),
    (13, 0.025): (17.38773617202735, 1.3834472191353144, 0.1152),
    (13, 0.05): (16.339166991126536, 1.430838641176642, 0.1061),
    (13, 0.075): (15.380356929098058, 1.484801399303008, 0.1026),
    (13, 0.1): (14.630901952632705, 1.5288779544182391, 0.1012),
    (13, 0.125): (13.966404784570809, 1.5703091220375294, 0.1013),
    (13, 0.15): (13.549746346529071, 1.5927864211578282, 0.0949),
    (13, 0.2): (12.637818665204136, 1.6499364680646709, 0.0902),
    (13, 0.25): (11.950012866906434, 1.686638304871015, 0.0885),
    (13, 0.3): (11.28080507485015, 1.7232088320216576, 0.0914),
    (13, 0.35): (10.519060101511087, 1.7709978365683035, 0.0546),
    (13, 0.4): (9.63044063512126, 1.831543907691517, 0.0577),
    (13, 0.45): (8.639213340972576, 1.8883892032048502, 0.0437),
    (14, 0.01): (19.577277123932358, 1.3302252801588197, 0.1256),
    (14, 0.025): (18.67069837950884, 1.3630501600508746, 0.1098),
    (14, 0.05): (17.394754032669987, 1.4213834222385853, 0.1047),
    (14, 0.075): (16.461746004465184, 1.4695246766531889, 0.1000),
    (14, 0.1): (15.67083578211256, 1.5131772675150112, 0.0987),
    (14, 0.125): (15.110039815959874, 1.5421446020251917, 0.0929),
    (14, 0.15): (14.743204437010032, 1.5570467271183475, 0.0838),
    (14, 0.2): (13.700290427582436, 1.620723567027936, 0.0888),
    (14, 0.25): (12.905632284751986, 1.6632072992989775, 0.0723),
    (14, 0.3): (11.949079963995999, 1.728321119528458, 0.0858),
    (14, 0.35): (11.233482769796959, 1.7674935724380674, 0.0663),
    (14, 0.4): (10.197337418894755, 1.8435079095996771, 0.0477),
    (14, 0.45): (9.148385317227254, 1.9035668805070443, 0.0415),
    (15, 0.01): (21.176236755809942, 1.2984357127458226, 0.1164),
    (15, 0.025): (20.15504753173689, 1.3336740200373391, 0.0999),
    (15, 0.05): (18.750034804859947, 1.3934231132210912, 0.0954),
    (15, 0.075): (17.701690923487206, 1.4445936201146556, 0.0922),
    (15, 0.1): (16.927566645793622, 1.482875324761131, 0.0883),
    (15, 0.125): (16.32511481214628, 1.512086787141277, 0.0831),
    (15, 0.15): (15.921513403990595, 1.5274990449153882, 0.0743),
    (15, 0.2): (14.858123611731529, 1.586006523428023, 0.0667),
    (15, 0.25): (13.941852174485817, 1.6353776495986858, 0.0685),
    (15, 0.3): (12.765927294458818, 1.7163842708088424, 0.0699),
    (15, 0.35): (11.783755603978115, 1.7831050051926096, 0.0622),
    (15, 0.4): (10.72666567034959, 1.857711630472305, 0.0406),
    (15, 0.45): (9.628645703011543, 1.9203430696556705, 0.0427),
    (16, 0.01): (22.12961223871622, 1.3013062498299806, 0.1229),
    (16, 0.025): (21.078842796804885, 1.3365784679817925, 0.1067),
    (16, 0.05): (19.891899813550854, 1.3804520626243006, 0.1218),
    (16, 0.075): (19.09390885976562, 1.4123507697332804, 0.0826),
    (16, 0.1): (18.296719280952072, 1.4479325040966828, 0.0765),
    (16, 0.125): (17.773257620353018, 1.4681476432857283, 0.0681),
    (16, 0.15): (17.29620624016911, 1.486680536183333, 0.0606),
    (16, 0.2): (16.26157885388914, 1.5347602533974023, 0.0885),
    (16, 0.25): (15.094296664364585, 1.598758407290705, 0.0690),
    (16, 0.3): (13.875542082177668, 1.6740404433240141, 0.0533),
    (16, 0.35): (12.770322951169154, 1.744782561213967, 0.0444),
    (16, 0.4): (11.607548487246255, 1.8223801239074693, 0.0851),
    (16, 0.45): (10.211978251965634, 1.9179400402240534, 0.0388),
    (17, 0.01): (23.024356832375645, 1.3077148416494426, 0.1259),
    (17, 0.025): (22.002234973102436, 1.339711015324064, 0.1090),
    (17, 0.05): (20.79254614796165, 1.3821764731615795, 0.0984),
    (17, 0.075): (19.900821680732417, 1.4178767861958876, 0.0969),
    (17, 0.1): (19.11381429786599, 1.4514275770950318, 0.0803),
    (17, 0.125): (18.83388503614176, 1.4546110016850649, 0.0647),
    (17, 0.15): (18.33643510991847, 1.4727124232292073, 0.0579),
    (17, 0.2): (17.25071330628563, 1.520616965981651, 0.0748),
    (17, 0.25): (16.294043422434875, 1.56235604058346, 0.1006),
    (17, 0.3): (14.847522651029621, 1.6494654802007924, 0.0891),
    (17, 0.35): (13.521261355816073, 1.7359699988001243, 0.1008),
    (17, 0.4): (12.18425413184663, 1.8275905356897446, 0.0420),
    (17, 0.45): (10.707195718569157, 1.9276218548152517, 0.0739),
    (18, 0.01): (23.783116980439566, 1.3206222664901834, 0.1315),
    (18, 0.025): (22.57160191528958, 1.361183759897907, 0.1513),
    (18, 0.05): (21.360782943732787, 1.4032042430936618, 0.1426),
    (18, 0.075): (20.40007786555974, 1.4422151037192867, 0.1661),
    (18, 0.1): (19.579870299248324, 1.4776181897107945, 0.1363),
    (18, 0.125): (19.32469250321782, 1.479090536738579, 0.1276),
    (18, 0.15): (18.85996833928845, 1.494798669204918, 0.1162),
    (18, 0.2): (17.759827573158564, 1.542830922850044, 0.1323),
    (18, 0.25): (17.091420836682488, 1.561479110946382, 0.0577),
    (18, 0.3): (15.83331846536246, 1.6276424738554847, 0.0545),
    (18, 0.35): (14.355396268632493, 1.7212486930700581, 0.0356),
    (18, 0.4): (12.867658322290467, 1.8221274321036478, 0.0290),
    (18, 0.45): (11.166687254075038, 1.9451925348343582, 0.0755),
    (19, 0.01): (25.312045369710788, 1.2969497529567695, 0.1286),
    (19, 0.025): (23.998011046802663, 1.339233762117232, 0.1091),
    (19, 0.05): (22.3513645973667, 1.400091874270516, 0.1078),
    (19, 0.075): (21.43500815738858, 1.4344336533335094, 0.0971),
    (19, 0.1): (20.37136867388092, 1.48252949350107, 0.1398),
    (19, 0.125): (19.88890693483594, 1.4979404860145744, 0.0840),
    (19, 0.15): (19.31244310823805, 1.5208466935774454, 0.0902),
    (19, 0.2): (18.289335273511565, 1.5630617828181481, 0.0823),
    (19, 0.25): (17.519868313889745, 1.5884943767251478, 0.0895),
    (19, 0.3): (16.225627289937947, 1.6566567935696228, 0.1123),
    (19, 0.35): (14.882010198072226, 1.7367020568594822, 0.0354),
    (19, 0.4): (13.351246962041024, 1.8390151729364914, 0.0428),
    (19, 0.45): (11.702260695236832, 1.9502473309673227, 0.0465),
    (20, 0.01): (26.489570878580675, 1.289339737790929, 0.1219),
    (20, 0.025): (25.02510422377784, 1.3359339961050298, 0.1086),
    (20, 0.05): (23.574966622749688, 1.384106012716403, 0.1010),
    (20, 0.075): (22.531522995216385, 1.4225217663064427, 0.0917),
    (20, 0.1): (21.463748459998943, 1.4679990935600837, 0.0880),
    (20, 0.125): (20.84031554938413, 1.4907592246620036, 0.0870),
    (20, 0.15): (20.132150310368512, 1.5208407598866522, 0.0800),
    (20, 0.2): (19.038170928769873, 1.565953787069985, 0.0688),
    (20, 0.25): (18.17106791423944, 1.5972885295520012, 0.0526),
    (20, 0.3): (16.949454307621032, 1.6566540215561145, 0.0412),
    (20, 0.35): (15.43490810240865, 1.7477827631761451, 0.0498),
    (20, 0.4): (13.735122613362584, 1.8648671585899748, 0.0559),
    (20, 0.45): (12.153949642738377, 1.9638279202895188, 0.0647),
    (21, 0.01): (27.834707221782732, 1.2753972472572284, 0.1187),
    (21, 0.025): (26.388964145914525, 1.3180274317759104, 0.1046),
    (21, 0.05): (25.09097522357054, 1.3552460878754464, 0.0915),
    (21, 0.075): (23.956120207294187, 1.3944011196233557, 0.0841),
    (21, 0.1): (22.743475735643813, 1.4436905834945484, 0.0820),
    (21, 0.125): (22.020669645750036, 1.4700684301323306, 0.0763),
    (21, 0.15): (21.28528475484014, 1.4993190677472017, 0.0724),
    (21, 0.2): (20.212477340594198, 1.539241317651016, 0.0575),
    (21, 0.25): (19.110468798087503, 1.5838445865223247, 0.0456),
    (21, 0.3): (17.654025952950718, 1.657169312864898, 0.0496),
    (21, 0.35): (16.018676920872657, 1.7550013377215627, 0.0988),
    (21, 0.4): (14.43477973874064, 1.8546041522581835, 0.0588),
    (21, 0.45): (12.840899069119097, 1.9477645220439062, 0.0617),
    (22, 0.01): (29.772660525433917, 1.240041808244321, 0.1069),
    (22, 0.025): (27.943585434095507, 1.2934109752530822, 0.0984),
    (22, 0.05): (26.300398073175867, 1.342648438956927, 0.0896),
    (22, 0.075): (25.133474593864303, 1.3811731622463037, 0.0793),
    (22, 0.1): (24.025444535130376, 1.4221125688031697, 0.0745),
    (22, 0.125): (23.179962020383865, 1.4528022555660463, 0.0704),
    (22, 0.15): (22.610830996238647, 1.470450309323863, 0.0633),
    (22, 0.2): (21.278301012308162, 1.5221346075596833, 0.0781),
    (22, 0.25): (19.942837856309882, 1.5786076999847893, 0.0690),
    (22, 0.3): (18.35804125446462, 1.6579535624302695, 0.0446),
    (22, 0.35): (16.558787606219212, 1.7655150584108308, 0.0745),
    (22, 0.4): (15.0338559612908, 1.8551954080361326, 0.0584),
    (22, 0.45): (13.541555612789574, 1.9308800178927683, 0.0602),
    (23, 0.01): (29.777847586790624, 1.277910613535632, 0.1220),
    (23, 0.025): (28.054796363223698, 1.328465507605634, 0.1519),
    (23, 0.05): (26.242890642534118, 1.386861491775192, 0.2105),
    (23, 0.075): (24.975504629953612, 1.4324403745232464, 0.1663),
    (23, 0.1): (24.206906397879322, 1.4575208140573874, 0.1189),
    (23, 0.125): (23.448136484315945, 1.4841858227519928, 0.0829),
    (23, 0.15): (22.86494596521024, 1.5031377036588316, 0.0745),
    (23, 0.2): (21.70086448669284, 1.5449926491073618, 0.0590),
    (23, 0.25): (20.494883036335253, 1.5926780445066941, 0.0563),
    (23, 0.3): (18.96637326272456, 1.6664225732388906, 0.0533),
    (23, 0.35): (17.45375208052356, 1.7459011547897072, 0.0740),
    (23, 0.4): (15.91737234916236, 1.828730785835026, 0.0389),
    (23, 0.45): (14.167413394008358, 1.9243260248429934, 0.0490),
    (24, 0.01): (30.818052397877175, 1.2774970852433039, 0.1211),
    (24, 0.025): (28.619228158852767, 1.3453540037982483, 0.1172),
    (24, 0.05): (26.756621340355565, 1.4055873915206558, 0.1115),
    (24, 0.075): (25.388995964755676, 1.4554413973264115, 0.1077),
    (24, 0.1): (24.514322730056698, 1.4861193041018825, 0.0997),
    (24, 0.125): (23.794443380030504, 1.5104886101089456, 0.1124),
    (24, 0.15): (23.346049257725053, 1.522002462994101, 0.0992),
    (24, 0.2): (22.284906166750158, 1.5573660996522454, 0.0678),
    (24, 0.25): (21.143680587237654, 1.5993477938067666, 0.0559),
    (24, 0.3): (19.390293085653067, 1.6871123745305339, 0.0684),
    (24, 0.35): (17.890768267091303, 1.764638807047776, 0.0523),
    (24, 0.4): (16.261758565782902, 1.8546310836687818, 0.0716),
    (24, 0.45): (14.58864287732641, 1.9406303352813814, 0.0701),
}
