// Copyright 2026 The Framelens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framelens/prompts.h"

namespace framelens::prompts {

const std::string_view kImageSystemPrompt = R"PROMPT(You are an intelligent and logical journalism scholar conducting analysis of images associated with news artciles.)PROMPT";

const std::string_view kImageEntityPrompt = R"PROMPT(Your task is to identify the main subject or entity in the image that is central to the image. Entities are people or organizations that play a central role in the image. If there are multiple entities, choose the one that is central to the image. if there are no central or clearly identifiable entities, choose "None".
Additionally, analyse the image and output the sentiment with which the subject is portrayed in the image. The sentiment can be "positive", "negative" or "neutral". In case of no entity, output "None. Output only the json and no other text.
Format your output as a json entry as follows:
{"entity-name": "<name of the entity>", "sentiment": "<sentiment towards the entity>", "sentiment-reason": "<reasoning for the portrayed sentiment>"}
<image>
For the image above, provide the name of the entity, sentiment towards the entity, and reasoning for the chosen sentiment.)PROMPT";

const std::string_view kImageFrames = R"PROMPT(
Economic - costs, benefits, or other finance related. The image can includes things including but not limited to  money, funding, taxes, bank, meetings with a logo of a financial institution. If you are using logo of a financial instituion to classify it as economic, make sure it is clearly visible. If it is not clearly visible, it should be classified as 'None'. A professional attire in itself doesn not mean economic frame. 
Capacity and resources - availability of physical, human, or financial resources, and capacity of current systems. In the image, we can see things including but not limited to a geographical area, farmland, agriculture land, labour, people working in an institution, or images that convey scarcity or surplus in some way. 
Morality - religious or ethical implications. In the image, we can see things including but not limited to god, death, priests, church, protests related to moral issues.
Fairness and equality - balance or distribution of rights, responsibilities, and resources. In the image, we can see things including but not limited to the fight for civil or political rights, LGBTQ,  or calls to stopping discrimination.
Legality, constitutionality and jurisprudence - legal rights, freedoms, and authority of individuals, corporations, and government. In the image, we can see things including but not limited to , prisons, laws, judges in robes, courtrooms, legal documents, and prison facilities. This does not include sports contexts, such as referees or players enforcing or breaking game rules.
Policy prescription and evaluation - discussion of specific policies aimed at addressing problems. In the image, we can see things including but not limited to discussions on rule, rule making bodies, people in formal settings such as boardrooms or legislative halls - actively debating, and reviewing policy drafts or proposals. You might see official charts, graphs, or official documents. People in formal attire with no other information should not be classified as policy prescription and evaluation.
Crime and punishment - effectiveness and implications of laws and their enforcement. In the image, we can see things including but not limited to criminal activities, violence, police officers making arrests, crime scenes with investigators, courtrooms during criminal trials, prisons with detainees. This frame specifically excludes contexts involving sports, such as referees, players, or rule enforcement within games, which are not related to societal law violations or legal punishment.
Security and defense - threats to the individual, community, or nation. In the image, we can see things including but not limited to military uniforms, defense personnel, border patrol, war, soldiers, military equipment like tanks or fighter jets, border walls, or surveillance systems monitoring wide areas.
Health and safety - health care, sanitation, public safety. Images with objects like coffee, drinks, food items or activities like sports which a clear and literal message that it affects health and safety positively or negatively should be classified as health and safety, otherwise it should be classified as 'None'. E.g. a person drinking coffee does not mean health and safety, but a person drinking a medicine or having cigarette does. A bus does not mean health and safety, but a bus with a warning sign does.  In the image, we can see things including but not limited to doctors, nurses, injury, disease, or events with environmental impact that may impact health and safety. 
Quality of life - threats and opportunities for the individual's wealth, happiness, and well-being. In the image, we can see things that improves happiness or demonstrates quality of life in some form. It also includes things that demonstrate deterioration of quality of life by showing hardships of people, homelessness etc. This may also include happy children, food items that demonstrate good quality of life or people enjoying a nice meal.
Cultural identity - traditions, customs, or values of a social group in relation to a policy issue. In the image, we can see things including but not limited to concerts, cultural dance, sports, art, celebrities, artists and prominent people related to these topics. Examples, celebrities, traditional dress, sports with clear countriy specific detail e.g. jerseys/flags, culural events, cultural art etc. Otherwise, it should be classified as 'None'.
Public opinion - attitudes and opinions of the general public, including polling and demographics. Includes generic protests, people (non-celebrities) engaging with large crowds, riots, and strikes and including but not limited to sharing petitions and encouraging people to take political action. It will also include news broadcasts, talk shows, and interviews with people that are related to public opinion at large. 
Political - considerations related to politics and politicians, including lobbying, elections, and attempts to sway voters. In the image, we can see things related to politicians, elections, voting, political campaigns. Just formal clothing does not mean political frame. If the images does not have a political person which is recognizable, it should not be classified as political. A formal attire with no political information should be classified as 'None'.
External regulation \& reputation - international reputation or foreign policy. In the image, we can see things including but not limited to international organizations, global discussions/meetings, foreign policy, flags from multiple countries, or delegates at a cross-country forum discussing reputation and regulation. If you use a logo of a global organization to classify it as external regulation and reputation, make sure it is clearly visible in the image. If it is not clearly visible, it should be classified as 'None'.
None - no frame could be identified because of lack of information in the image. This should be selected when no other frame is applicable. Example, a handshake with no other information, a logo of a company with no other information, a landscape with no other information, a person in a photo album with no other information, a person speaking with no other information about the content of the speech or person's identity, a formal event with  no other information, a person in formal attire with no other information, a news logo with no news, a sports event with no additional information, simple objects like vehicle/car/pen/paper/sign-boards/objects etc with no other information etc.)PROMPT";

const std::string_view kImageFramingPrompt = R"PROMPT(A set of generic news frames with an id, name and description are: 
)PROMPT";

const std::string_view kImageFramesTaskPrompt = R"PROMPT(
Given the list of frames, and the image.
<image>
Your task is to carefully analyse the image and choose the appropriate frames from the above list.
Output your answer in a json format with the format:
{"frames-list": "[<All frame names that apply from list provided above>], "reason": "<reasoning for the frames chosen>"}
Output only the json and no other text.
)PROMPT";

const std::string_view kImageCaptionPrompt = R"PROMPT(Your task is to write a short caption for the image that describes what it shows, as it would appear under the image in a news article.
Format your output as a json entry as follows:
{"caption": "<caption of the image>"}
<image>
For the image above, provide the caption. Output only the json and no other text.)PROMPT";

const std::string_view kTextSystemPrompt = R"PROMPT(You are an intelligent and logical journalism scholar conducting analysis of news articles. Your task is to read the article and answer the following question about the article. Only output the json and no other text.
)PROMPT";

const std::string_view kTextTopicPrompt = R"PROMPT(Output the topic of the article, along with a justification for the answer. The topic should be a single word or phrase. Format your output as a json entry with the field 'topic_justification' and 'topic'.)PROMPT";

const std::string_view kTextEntityPrompt = R"PROMPT(Your task is to identify the main subject or entity in the article that is central to the article. Entities are people or organizations that play a central role. If there are multiple entities being discussed, choose the one that is central to the article. If there are no central or clearly identifiable entities, choose "None".
Additionally, analyse the image and output the sentiment with which the subject is portrayed in the image. The sentiment can be "positive", "negative" or "neutral". In case of no entity, output "None. Output only the json and no other text.
Format your output as a json entry as follows:

{"entity-name": "<name of the entity>", "sentiment": "<sentiment towards the entity>", "sentiment-reason": "<reasoning for the portrayed sentiment>"}

For the given article, provide the name of the entity, sentiment towards the entity, and reasoning for the chosen sentiment.)PROMPT";

const std::string_view kTextFrames = R"PROMPT(
A list of frame names and their descriptions used in news is:
Economic - costs, benefits, or other financial implications,
Capacity and resources - availability of physical, human, or financial resources, and capacity of current systems, 
Morality - religious or ethical implications,
Fairness and equality - balance or distribution of rights, responsibilities, and resources,
Legality, constitutionality and jurispudence - rights, freedoms, and authority of individuals, corporations, and government,
Policy prescription and evaluation - discussion of specific policies aimed at addressing problems,
Crime and punishment - effectiveness and implications of laws and their enforcement,
Security and defense - threats to welfare of the individual, community, or nation,
Health and safety - health care, sanitation, public safety,
Quality of life - threats and opportunities for the individual's wealth, happiness, and well-being,
Cultural identity - traditions, customs, or values of a social group in relation to a policy issue,
Public Opinion - attitudes and opinions of the general public, including polling and demographics,
Political - considerations related to politics and politicians, including lobbying, elections, and attempts to sway voters,
External regulation and reputation - international reputation or foreign policy of the U.S,
None - none of the above or any frame not covered by the above categories.)PROMPT";

const std::string_view kTextFramesMultiplePrompt = R"PROMPT(
Given the list of news frames, and the news article.
Your task is to carefully analyse the article and choose the appropriate frames used in the article from the above list.
Output your answer in a json format with the format:
{"frames-list": "[<All frame names that apply from list provided above>], "reason": "<reasoning for the frames chosen>"}.
Only choose the frames from the provided list of frames. If none of the frames apply, output "None" as the answer.
)PROMPT";

const std::string_view kTextIssuePrompt = R"PROMPT(
Entman (1993) has defined framing as "making some aspects of reality more salient in a text in order to promote a particular problem definition, causal interpretation, moral evaluation, and/or treatment recommendation for the item described".
Frames serve as metacommunicative structures that use reasoning devices such as metaphors, lexical choices, images, symbols, and actors to evoke a latent message for media users (Gamson, 1995).
There are several ways to cover a specific issue in the news. For instance, the issue of climate change can be framed as a scientific, a political, a moral, or a health issue etc. with issue-specific frames such as "Global Doom", "Local Tragedies", "Sustainable future".
Similarly, articles related to immigration can frame immigrants as a hero, a victim, or a threat with frames such as "Economic Burden", "Cultural Invasion", "Humanitarian Crisis".
Based on the topic of the article, come up with an issue-specific frame that is relevant to the topic of the article. Provide a justification for the frame. 
Format your output as a json entry with the fields 'issue_frame_justification' and 'issue_frame'.)PROMPT";

const std::string_view kTextPostPrompt = R"PROMPT( Output only the json and no other text. Make sure to add escape characters where necessary to make it a valid json output.)PROMPT";

}  // namespace framelens::prompts
