#include "skillforge/prompts.hpp"

namespace skillforge::prompts {

const std::string kExtractionSystem =
    "You are an expert human resource manager. You need to analyse skills in a job posting.";

const std::string kExtractionInstruction =
    "You are an expert human resource manager. You are given an extract from a job description. "
    "Highlight all the skills, competencies and tasks that are required from the candidate applying "
    "for the job, by surrounding them with tags @@ and ##. Make sure you don't highlight job titles, "
    "nor elements related to the company and not to the job itself. Make sure to rewrite the sentence "
    "with all the tags.";

const std::vector<Demonstration>& fixed_extraction_demos() {
    static const std::vector<Demonstration> demos = {
        {"we are looking for a team leader with strong communication skills to foster collaboration "
         "and information sharing within the team.",
         "We are looking for a team leader with strong @@communication skills## to foster "
         "collaboration and information sharing within the team."},
        {"the ability to work collaboratively across disciplines is a key criterion for this position.",
         "@@ability to collaborate across disciplines## is a key criterion for this position."},
        {"As a Java Senior Software Engineer with experience, you will be a member of a Scrum team.",
         "As a Java Senior Software Engineer with experience, you will be a member of a Scrum team."},
        {"In her role as a team leader, she has continuously supported the professional development "
         "of her employees.",
         "In her role as a team leader, she has continuously fostered the professional @@development "
         "of her employees##."},
        {"He is a resilient employee who has been able to set proper priorities and organize tasks "
         "thoughtfully during periods of heavy workload.",
         "He is a resilient employee who has been able to set @@correct priorities and organize tasks "
         "thoughtfully## during periods of high workload."},
        {"Highly qualified, flexible employees from the insurance and IT industry develop them further.",
         "Highly qualified, flexible employees from the insurance and IT industries continue to "
         "develop them."},
        {"Over the past few years, it has succeeded in continuously developing itself in a rapidly "
         "changing environment.",
         "Over the past few years, he has succeeded in @@continuously developing## himself in a "
         "rapidly changing environment."},
    };
    return demos;
}

const std::string kMatchingSystem =
    "You are an expert human resource manager. You need to analyse skills in a job posting.";

const std::string kMatchingInstruction =
    "You are given a sentence from a job description, and a skill extracted from this sentence. "
    "Choose from the list of options the one that best match the skill in the context. Answer with "
    "the associated letter.";

const std::string kFixedMatchingDemo =
    "Sentence: Understand basic provisions of copyright and privacy.\n"
    "Skills: Data protection.\n"
    "A: \"Respect privacy principles\"\n"
    "B: \"Understand data protection\"\n"
    "C: \"Ensure data protection in aviation operations\"\n"
    "D: \"Data protection\"\n"
    "Answer: b, d.";

const std::string kPositiveSystem =
    "You are the leading AI Writer at a large, multinational HR agency. You are considered as the "
    "world's best expert at expressing required skills and knowledge in a variety of clear ways. You "
    "are particularly proficient with the ESCO Occupation and Skills framework. As you are widely "
    "lauded for your job posting writing ability, you will assist the user in all job-posting, job "
    "requirements and occupational skills related tasks.";

namespace {
// Shared body; the two variants differ only in the requested shape of the
// output (one sentence vs a paragraph).
std::string positive_instruction(const std::string& shape) {
    return "You work in collaboration with ESCO to gather rigid standards for job postings. Given a "
           "list of ESCO skills and knowledges, you're asked to produce a single example of " +
           shape +
           " that could be found in a job ad and refer to all skill or knowledge component. Ensure "
           "that your sentence is well written and could be found in real job advertisement. Use a "
           "variety of styles. You're trying to provide a representative sample of the many, many "
           "ways real job postings would evoke skills. All the skills in : {skillList} must be "
           "integrated. A candidate should have different degrees of expertise in all the given "
           "skills. This degree should be specified for each skills in the sentence. You must not "
           "include any skills in ESCO that were not given to you. Try to be as implicit as possible "
           "when mentionning the skill. Try not to use the exact skill string {wordsToAvoid}. Avoid "
           "explicitly using the wording of this extra information in your examples. Your sentence "
           "must not start with 'We are seeking', 'We are looking' or 'We are searching'. Generate "
           "stricly only one example.";
}
} // namespace

const std::string kPositiveInstructionDense = positive_instruction("exactly one sentence");
const std::string kPositiveInstructionSparse =
    positive_instruction("a paragraph containing multiple sentences");

const std::string kCompanySystem =
    "You are the leading AI Writer at a large, multinational HR agency. You are considered as the "
    "world's best expert at writing introductions of job posting.";

const std::string kCompanyInstruction =
    "You are the leading AI Writer at a large, multinational HR agency. You are considered as the "
    "world's best expert at writing introductions of job posting. You should write {nExamples} "
    "examples of the first line of the job posting. It should consists in introducing the company, "
    "its localization, the number of employees, and any information relevant to a future candidates "
    "who wants to learn about the company. The description should be concise, specify the potential "
    "growth of the company and a domain of action. You shouldn't mentoin anything about the actual "
    "job, no skills required for the candidate and shouldn't mention the candidate at all. You "
    "should mention a wide range of company field, size, and localization in each of the examples.";

const std::string kPerksSystem =
    "You are the leading AI Writer at a large, multinational HR agency. You are considered as the "
    "world's best expert at specifying administrative information in job posting.";

const std::string kPerksInstruction =
    "You are the leading AI Writer at a large, multinational HR agency. You are considered as the "
    "world's best expert at specifying administrative information in job posting. You should produce "
    "{nExamples} descriptions of the salary and the perks a candidate to a certain job would have. "
    "You shouldn't mention the actual job and the candidate itself. You could add diversity by "
    "varying the salary and the perks. You must write a salary range between 40k and 100k according "
    "to the job in half of your generation.";

const std::string kSpanTagSystem =
    "You are an expert human resource manager. You need to analyse skills in a job posting.";

const std::string kSpanTagInstruction =
    "You are an expert human resource manager. You are given an extract from a job description and a "
    "skill coming from ESCO. Highlight all the parts of the job description that relates to the "
    "given skill, by surrounding them with tags '@@' at the beginning and '##' at the end. You "
    "should rewrite the entire sentence. The highlighted parts should precisely talk about the given "
    "skills and only this skills. The higlighted parts must precisely be about the given skills. Do "
    "not highlight parts not related to it. The sentence should be rewritten perfectly, using the "
    "same exact same words. You must highlight at least one part in the sentence that you will "
    "rewrite. The highlighted part should be as short as possible.";

const std::string kCorrectionBadDelimiters =
    "In your response, you highlighted some parts using @@ at the beginning and @@ at the end. "
    "Please use @@ at the beginning of the parts and ## at the end of the part you want to "
    "highlight. Annotate the previous sentence, but with the correct highlighting.";

const std::string kCorrectionNothingHighlighted =
    "In your response, you highlighted nothing. Please annotate the previous sentence, and highlight "
    "at least one part linked to the skill.";

} // namespace skillforge::prompts
