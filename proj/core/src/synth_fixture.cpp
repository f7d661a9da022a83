#include "wikitrends/synth_fixture.hpp"

#include "wikitrends/ingest.hpp"
#include "wikitrends/io_util.hpp"
#include "wikitrends/rng.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace wikitrends {

namespace {

using nlohmann::json;

constexpr uint32_t kClusters = 3;
constexpr uint32_t kPagesPerCluster = 8;
constexpr uint32_t kNoisePages = 36;
constexpr uint32_t kHours = 336;
constexpr int64_t kStartHour = 426600; // 2018-09-01T00Z

struct ThemedPage {
    const char* title;
    const char* summary;
};

struct LangFixture {
    const char* code;
    ThemedPage pages[kClusters][kPagesPerCluster]; // football, politics, music
    std::string (*noise_summary)(uint32_t);
    const char* noise_prefix;
    std::vector<const char*> stopwords;
    std::map<std::string, std::string> title_patterns;
    std::vector<std::pair<std::string, std::vector<std::string>>> keyword_sets;
};

std::string en_noise(uint32_t i) {
    return "Roadside marker " + std::to_string(i) +
           " stands beside the old road near a stone bridge and a quiet meadow.";
}

std::string fr_noise(uint32_t i) {
    return "La borne routière " + std::to_string(i) +
           " se dresse au bord du vieux chemin près du pont de pierre et du pré tranquille.";
}

std::string ru_noise(uint32_t i) {
    return "Придорожный знак " + std::to_string(i) +
           " стоит у старой дороги рядом с каменным мостом и тихим лугом.";
}

LangFixture en_fixture() {
    LangFixture f;
    f.code = "en";
    f.noise_summary = en_noise;
    f.noise_prefix = "Roadside_Marker_";
    f.stopwords = {"the", "a",  "an",  "is",    "are",  "was",  "were",  "of",   "in",
                   "on",  "for", "and", "or",   "to",   "with", "by",    "at",   "his",
                   "her", "its", "their", "after", "over", "who",  "whose", "that", "this",
                   "it",  "he",  "she", "they"};
    f.title_patterns = {{"footballer", "football"}, {"football", "football"},
                        {"politician", "politics"}, {"album", "music"},
                        {"song", "music"},          {"singer", "music"}};
    f.keyword_sets = {{"football", {"football"}},
                      {"politics", {"political", "party"}},
                      {"music", {"album"}}};
    const ThemedPage football[kPagesPerCluster] = {
        {"Eastport_Rovers_F.C.",
         "Eastport Rovers is a professional football club that plays in the northern league "
         "and won the cup after a late goal."},
        {"Danny_Crossfield_(footballer)",
         "Danny Crossfield is a football striker known for his headers and a record goal "
         "tally in a single league season."},
        {"Milldale_Derby_(football)",
         "The Milldale derby is a football match between two rival clubs whose supporters "
         "fill the stadium every season."},
        {"Harwick_United_F.C.",
         "Harwick United is a football club whose young squad reached the final after a "
         "dramatic penalty goal."},
        {"Tom_Bellamy_(footballer)",
         "Tom Bellamy is a retired football defender who captained the national team and "
         "later coached a league club."},
        {"Northbay_Stadium",
         "Northbay stadium hosts football matches and concerts and saw a record crowd when "
         "the home side scored the winning goal."},
        {"Golden_Boot_1994",
         "The golden boot of 1994 went to the football striker who scored the most goals "
         "across the league that year."},
        {"Riverside_Cup_Final",
         "The riverside cup final was a football match decided by a single goal in extra "
         "time before a roaring crowd."}};
    const ThemedPage politics[kPagesPerCluster] = {
        {"Marta_Keller_(politician)",
         "Marta Keller is a politician who led her party through the election with a "
         "platform of reform."},
        {"Civic_Renewal_Party",
         "The civic renewal party is a political movement that campaigns for transparent "
         "government and won seats in parliament."},
        {"Arden_General_Election",
         "The arden general election saw the ruling party lose its majority after a "
         "political scandal dominated the campaign."},
        {"Referendum_on_the_Harbor_Act",
         "The referendum on the harbor act divided every political party and drew a record "
         "turnout of voters."},
        {"Viktor_Hale_(politician)",
         "Viktor Hale is a politician and former minister whose party nominated him for "
         "the presidency."},
        {"Coalition_Talks_Collapse",
         "The coalition talks collapse left the largest party seeking new political "
         "partners to form a government."},
        {"Senate_Budget_Vote",
         "The senate budget vote passed after one party broke ranks following days of "
         "political bargaining."},
        {"Prime_Minister_of_Arden",
         "The prime minister of arden leads the political cabinet and answers to the party "
         "congress each spring."}};
    const ThemedPage music[kPagesPerCluster] = {
        {"Midnight_Garden_(album)",
         "Midnight garden is a studio album by the singer featuring ten songs recorded "
         "over one summer."},
        {"Lena_Hart_(singer)",
         "Lena Hart is a singer whose debut album topped the charts and whose tour sold "
         "out within hours."},
        {"Paper_Lanterns_(song)",
         "Paper lanterns is a song released as the lead single from the band's second "
         "album."},
        {"The_Hollow_Suns",
         "The hollow suns are a band whose latest album and single brought their music to "
         "a global audience."},
        {"Echo_Valley_Tour",
         "The echo valley tour promoted the album across thirty cities with the singer "
         "performing every song live."},
        {"Stereo_Bloom_(album)",
         "Stereo bloom is an album of twelve songs that critics praised for its warm "
         "analog sound."},
        {"Clara_Voss_(singer)",
         "Clara Voss is a singer and songwriter whose music blends folk with electronic "
         "textures on her new album."},
        {"Violet_Static_(song)",
         "Violet static is a song whose video went viral and pushed the album back onto "
         "the charts."}};
    for (uint32_t j = 0; j < kPagesPerCluster; ++j) {
        f.pages[0][j] = football[j];
        f.pages[1][j] = politics[j];
        f.pages[2][j] = music[j];
    }
    return f;
}

LangFixture fr_fixture() {
    LangFixture f;
    f.code = "fr";
    f.noise_summary = fr_noise;
    f.noise_prefix = "Borne_Routière_";
    f.stopwords = {"le",  "la",  "les", "un",   "une",  "des",  "de",   "du",  "est",
                   "sont", "et",  "ou",  "à",    "au",   "aux",  "en",   "dans", "pour",
                   "par", "sur", "avec", "qui",  "que",  "dont", "son",  "sa",  "ses",
                   "leur", "chaque", "a",  "ont",  "fut"};
    f.title_patterns = {{"footballeur", "football"},    {"femme_politique", "politics"},
                        {"homme_politique", "politics"}, {"album", "music"},
                        {"chanson", "music"},            {"chanteuse", "music"}};
    f.keyword_sets = {{"football", {"football"}},
                      {"politics", {"politique", "parti"}},
                      {"music", {"album"}}};
    const ThemedPage football[kPagesPerCluster] = {
        {"AS_Valmont",
         "L'AS Valmont est un club de football dont les supporters ont envahi le stade "
         "après le but de la victoire en coupe."},
        {"Luc_Marchand_(footballeur)",
         "Luc Marchand est un attaquant de football connu pour ses reprises de la tête et "
         "un record de buts en une saison."},
        {"Derby_de_Rivesalte",
         "Le derby de Rivesalte oppose deux clubs rivaux de football devant un stade "
         "comble chaque saison."},
        {"FC_Miremont",
         "Le FC Miremont est un club de football dont la jeune équipe a atteint la finale "
         "après un but sur penalty."},
        {"Paul_Lefort_(footballeur)",
         "Paul Lefort est un ancien défenseur de football qui a porté le brassard de la "
         "sélection nationale."},
        {"Stade_de_Beaulieu",
         "Le stade de Beaulieu accueille des matchs de football et des concerts et a connu "
         "une affluence record."},
        {"Trophée_des_Buteurs",
         "Le trophée des buteurs récompense l'attaquant de football ayant inscrit le plus "
         "de buts du championnat."},
        {"Finale_de_la_Coupe_du_Littoral",
         "La finale de la coupe du littoral fut un match de football décidé par un but "
         "unique en prolongation."}};
    const ThemedPage politics[kPagesPerCluster] = {
        {"Claire_Vasseur_(femme_politique)",
         "Claire Vasseur est une femme politique qui a mené son parti aux élections avec "
         "un programme de réformes."},
        {"Parti_du_Renouveau_Civique",
         "Le parti du renouveau civique est un mouvement politique qui milite pour un "
         "gouvernement transparent."},
        {"Élections_Générales_d'Ardenne",
         "Les élections générales d'ardenne ont vu le parti au pouvoir perdre sa majorité "
         "après un scandale politique."},
        {"Référendum_sur_la_Loi_Portuaire",
         "Le référendum sur la loi portuaire a divisé chaque parti politique et mobilisé "
         "un nombre record d'électeurs."},
        {"Victor_Hallé_(homme_politique)",
         "Victor Hallé est un homme politique et ancien ministre que son parti a désigné "
         "pour la présidence."},
        {"Échec_des_Négociations_de_Coalition",
         "L'échec des négociations de coalition a contraint le plus grand parti à chercher "
         "de nouveaux alliés politiques."},
        {"Vote_du_Budget_au_Sénat",
         "Le vote du budget au sénat a été acquis après qu'un parti a rompu les rangs au "
         "terme de tractations politiques."},
        {"Premier_Ministre_d'Ardenne",
         "Le premier ministre d'ardenne dirige le cabinet politique et répond devant le "
         "congrès du parti chaque printemps."}};
    const ThemedPage music[kPagesPerCluster] = {
        {"Jardin_de_Minuit_(album)",
         "Jardin de minuit est un album studio de la chanteuse composé de dix chansons "
         "enregistrées en un été."},
        {"Léna_Harcourt_(chanteuse)",
         "Léna Harcourt est une chanteuse dont le premier album a dominé les classements "
         "et dont la tournée a affiché complet."},
        {"Lanternes_de_Papier_(chanson)",
         "Lanternes de papier est une chanson parue comme premier extrait du deuxième "
         "album du groupe."},
        {"Les_Soleils_Creux",
         "Les soleils creux forment un groupe dont le dernier album et le nouvel extrait "
         "ont porté leur musique au monde entier."},
        {"Tournée_Vallée_d'Écho",
         "La tournée vallée d'écho a promu l'album dans trente villes avec la chanteuse "
         "interprétant chaque chanson en direct."},
        {"Éclosion_Stéréo_(album)",
         "Éclosion stéréo est un album de douze chansons salué par la critique pour sa "
         "chaleur analogique."},
        {"Clara_Vosges_(chanteuse)",
         "Clara Vosges est une chanteuse et autrice dont la musique marie le folk aux "
         "textures électroniques sur son nouvel album."},
        {"Statique_Violette_(chanson)",
         "Statique violette est une chanson dont le clip est devenu viral et a ramené "
         "l'album dans les classements."}};
    for (uint32_t j = 0; j < kPagesPerCluster; ++j) {
        f.pages[0][j] = football[j];
        f.pages[1][j] = politics[j];
        f.pages[2][j] = music[j];
    }
    return f;
}

LangFixture ru_fixture() {
    LangFixture f;
    f.code = "ru";
    f.noise_summary = ru_noise;
    f.noise_prefix = "Придорожный_Знак_";
    f.stopwords = {"это", "и",  "в",   "на",   "с",    "к",     "по",  "за",   "из",
                   "у",   "о",  "не",  "что",  "как",  "его",   "её",  "их",   "чей",
                   "чья", "чьи", "чьё", "после", "перед", "который", "которая", "которого",
                   "каждую", "каждый", "была", "был"};
    f.title_patterns = {{"футболист", "football"}, {"футбол", "football"},
                        {"политик", "politics"},   {"альбом", "music"},
                        {"песня", "music"},        {"певица", "music"}};
    f.keyword_sets = {{"football", {"футбол"}},
                      {"politics", {"политическ", "парти"}},
                      {"music", {"альбом"}}};
    const ThemedPage football[kPagesPerCluster] = {
        {"ФК_Заречье",
         "ФК Заречье это футбольный клуб который выиграл кубок после решающего гола в "
         "финале."},
        {"Денис_Крылов_(футболист)",
         "Денис Крылов это нападающий известный своими голами и рекордом футбольного "
         "сезона."},
        {"Северное_Дерби",
         "Северное дерби это футбольный матч двух непримиримых клубов чьи болельщики "
         "заполняют стадион каждый сезон."},
        {"ФК_Хартвик",
         "ФК Хартвик это футбольный клуб чья молодая команда дошла до финала после гола с "
         "пенальти."},
        {"Тимофей_Белов_(футболист)",
         "Тимофей Белов это бывший защитник сборной который после карьеры тренировал "
         "футбольный клуб."},
        {"Стадион_Северный_Залив",
         "Стадион северный залив принимает футбольные матчи и концерты и видел рекордную "
         "публику после победного гола."},
        {"Золотая_Бутса_1994",
         "Золотая бутса досталась нападающему забившему больше всех голов в футбольном "
         "чемпионате того года."},
        {"Финал_Речного_Кубка",
         "Финал речного кубка это футбольный матч решённый единственным голом в "
         "дополнительное время."}};
    const ThemedPage politics[kPagesPerCluster] = {
        {"Марта_Келлер_(политик)",
         "Марта Келлер это политик которая привела свою партию к победе на выборах с "
         "программой реформ."},
        {"Партия_Гражданского_Обновления",
         "Партия гражданского обновления это политическое движение выступающее за "
         "прозрачное правительство."},
        {"Всеобщие_Выборы_в_Ардене",
         "Всеобщие выборы в ардене закончились тем что правящая партия потеряла "
         "большинство после политического скандала."},
        {"Референдум_о_Портовом_Акте",
         "Референдум о портовом акте расколол каждую политическую партию и собрал "
         "рекордную явку избирателей."},
        {"Виктор_Хейл_(политик)",
         "Виктор Хейл это политик и бывший министр которого партия выдвинула в "
         "президенты."},
        {"Провал_Коалиционных_Переговоров",
         "Провал коалиционных переговоров заставил крупнейшую партию искать новых "
         "политических союзников."},
        {"Голосование_по_Бюджету_Сената",
         "Голосование по бюджету сената прошло после того как одна партия нарушила строй "
         "после дней политического торга."},
        {"Премьер-министр_Ардена",
         "Премьер-министр ардена возглавляет политический кабинет и отчитывается перед "
         "съездом партии каждую весну."}};
    const ThemedPage music[kPagesPerCluster] = {
        {"Полуночный_Сад_(альбом)",
         "Полуночный сад это студийный альбом певицы из десяти песен записанных за одно "
         "лето."},
        {"Лена_Харт_(певица)",
         "Лена Харт это певица чей дебютный альбом возглавил чарты а тур был распродан за "
         "часы."},
        {"Бумажные_Фонари_(песня)",
         "Бумажные фонари это песня выпущенная первым синглом со второго альбома группы."},
        {"Полые_Солнца",
         "Полые солнца это группа чей последний альбом и новый сингл принесли их музыку "
         "всему миру."},
        {"Тур_Долина_Эха",
         "Тур долина эха продвигал альбом по тридцати городам где певица исполняла каждую "
         "песню вживую."},
        {"Стерео_Цветение_(альбом)",
         "Стерео цветение это альбом из двенадцати песен который критики хвалили за "
         "тёплое аналоговое звучание."},
        {"Клара_Восс_(певица)",
         "Клара Восс это певица и автор песен чья музыка соединяет фолк с электронными "
         "фактурами на новом альбоме."},
        {"Фиолетовые_Помехи_(песня)",
         "Фиолетовые помехи это песня чьё видео стало вирусным и вернуло альбом в чарты."}};
    for (uint32_t j = 0; j < kPagesPerCluster; ++j) {
        f.pages[0][j] = football[j];
        f.pages[1][j] = politics[j];
        f.pages[2][j] = music[j];
    }
    return f;
}

std::string pageview_filename(int64_t absolute_hour) {
    using namespace std::chrono;
    const sys_days day{days{absolute_hour / 24}};
    const year_month_day ymd{day};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "pv-%04d%02u%02u-%02lld", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<long long>(absolute_hour % 24));
    return buf;
}

void write_language(const std::filesystem::path& dir, const LangFixture& fixture,
                    uint64_t seed) {
    SyntheticSpec spec;
    spec.n_clusters = kClusters;
    spec.pages_per_cluster = kPagesPerCluster;
    spec.n_noise_pages = kNoisePages;
    spec.t_hours = kHours;
    spec.baseline_rate = 200.0;
    spec.burst_magnitude = 50.0;
    spec.intra_cluster_edge_prob = 0.5;
    spec.inter_cluster_edge_prob = 0.02;
    spec.seed = derive_seed(seed, std::string("fixture/") + fixture.code);
    SyntheticData data = generate_synthetic(spec);
    data.matrix.start_hour = kStartHour;
    data.matrix.index.language = fixture.code;

    // Replace the generator's placeholder titles with the themed ones.
    PageIndex& index = data.matrix.index;
    index.ids.clear();
    for (uint32_t c = 0; c < kClusters; ++c)
        for (uint32_t j = 0; j < kPagesPerCluster; ++j)
            index.titles[c * kPagesPerCluster + j] = fixture.pages[c][j].title;
    for (uint32_t i = 0; i < kNoisePages; ++i)
        index.titles[kClusters * kPagesPerCluster + i] =
            fixture.noise_prefix + std::to_string(i);
    for (uint32_t p = 0; p < index.size(); ++p) index.ids.emplace(index.titles[p], p);

    // Hourly pageview files (plain text, hour encoded in the name).
    for (uint32_t t = 0; t < kHours; ++t) {
        std::string body;
        for (uint32_t p = 0; p < index.size(); ++p) {
            const uint32_t views = data.matrix.at(p, t);
            if (views == 0) continue;
            body += serialize_pageview_line({fixture.code, index.titles[p], views});
            body += "\n";
        }
        write_file_atomic(dir / pageview_filename(kStartHour + t), body);
    }

    std::string edges;
    for (const auto& [src, dst] : data.edges.edges)
        edges += index.titles[src] + "\t" + index.titles[dst] + "\n";
    write_file_atomic(dir / "edges.tsv", edges);

    SummaryStore summaries;
    for (uint32_t c = 0; c < kClusters; ++c)
        for (uint32_t j = 0; j < kPagesPerCluster; ++j)
            summaries[c * kPagesPerCluster + j] = fixture.pages[c][j].summary;
    for (uint32_t i = 0; i < kNoisePages; i += 2) // every other noise page has text
        summaries[kClusters * kPagesPerCluster + i] = fixture.noise_summary(i);
    save_summaries(dir / "summaries.jsonl", summaries, index);

    std::string stopwords;
    for (const char* word : fixture.stopwords) stopwords += std::string(word) + "\n";
    write_file_atomic(dir / "stopwords.txt", stopwords);

    json rules;
    rules["title_patterns"] = fixture.title_patterns;
    rules["keyword_sets"] = json::array();
    for (const auto& [label, keywords] : fixture.keyword_sets)
        rules["keyword_sets"].push_back(json{{"label", label}, {"keywords", keywords}});
    write_file_atomic(dir / "rules.json", rules.dump(2) + "\n");
}

} // namespace

std::filesystem::path write_demo_fixture(const std::filesystem::path& root, uint64_t seed) {
    const LangFixture fixtures[] = {en_fixture(), fr_fixture(), ru_fixture()};
    json languages = json::array();
    for (const LangFixture& fixture : fixtures) {
        const std::string code = fixture.code;
        std::filesystem::create_directories(root / code);
        write_language(root / code, fixture, seed);
        languages.push_back(json{{"code", code},
                                 {"pageviews", code + "/pv-*"},
                                 {"edges", code + "/edges.tsv"},
                                 {"summaries", code + "/summaries.jsonl"},
                                 {"stopwords", code + "/stopwords.txt"},
                                 {"rules", code + "/rules.json"}});
    }

    json config;
    config["config_version"] = 1;
    config["seed"] = seed;
    config["output_dir"] = "out";
    config["time"] = {{"start_hour", kStartHour}, {"end_hour", kStartHour + kHours}};
    config["ingest"] = {{"min_total_views", 0}, {"min_degree", 0}};
    config["burst"] = {{"window_hours", 168},
                       {"z_threshold", 3.0},
                       {"min_views", 100},
                       {"epsilon", 1e-9}};
    config["graph"] = {{"w_min", 0.5},      {"min_overlap_hours", 6}, {"damping", 0.85},
                       {"tol", 1e-9},       {"max_iter", 100},        {"min_cluster_size", 5},
                       {"resolution", 1.0}};
    config["keywords"] = {{"top_k", 20}};
    config["lda"] = {{"enabled", false}, {"k", 10}, {"alpha", 0.0}, {"beta", 0.01},
                     {"iterations", 200}};
    config["classifier"] = {{"smoothing", 1.0}, {"train_fraction", 0.8}};
    config["alignment"] = {{"delta_hours", 48}};
    config["languages"] = std::move(languages);

    const std::filesystem::path config_path = root / "config.json";
    write_file_atomic(config_path, config.dump(2) + "\n");
    return config_path;
}

} // namespace wikitrends
